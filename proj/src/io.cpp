#include "toricq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "toricq/linalg.hpp"

namespace toricq {

namespace {

int degree_of(const FieldPtr& f) { return f ? f->degree() : 1; }

Rational parse_rational_text(const Json& j) {
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ValidationError& e) {
        throw ValidationError("schema", e.what());
    }
}

Integer parse_integer(const Json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Rational q = parse_rational_text(j);
        if (q.get_den() != 1) throw ValidationError("schema", "expected an integer, got " + j.dump());
        return q.get_num();
    }
    throw ValidationError("schema", "expected an integer, got " + j.dump());
}

Rational parse_rational_json(const Json& j) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational_text(j);
    throw ValidationError("schema", "expected a rational string \"p/q\", got " + j.dump());
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError("schema", std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Json order_to_json(const GroupPresentation& g) {
    if (!g.finite) return "infinite";
    return g.order->get_str();
}

}  // namespace

FieldPtr parse_field(const Json& j) {
    if (j.is_null()) return nullptr;
    std::vector<Integer> poly;
    for (const auto& c : member(j, "minpoly")) poly.push_back(parse_integer(c));
    const Json& iv = member(j, "root_interval");
    if (!iv.is_array() || iv.size() != 2) throw ValidationError("schema", "root_interval must have two endpoints");
    FieldPtr f = NumberField::make(poly, parse_rational_json(iv[0]), parse_rational_json(iv[1]));
    return f->degree() == 1 ? nullptr : f;
}

Json field_to_json(const FieldPtr& f) {
    if (!f) return nullptr;
    Json poly = Json::array();
    for (const auto& c : f->minimal_polynomial()) poly.push_back(c.get_str());
    return Json{{"minpoly", poly}, {"root_interval", {f->root_interval().lo.get_str(), f->root_interval().hi.get_str()}}};
}

FieldScalar parse_scalar(const Json& j, const FieldPtr& f) {
    std::vector<Rational> coeffs;
    if (j.is_array()) {
        for (const auto& c : j) coeffs.push_back(parse_rational_json(c));
    } else {
        coeffs.push_back(parse_rational_json(j));
    }
    if (coeffs.empty()) throw ValidationError("schema", "empty scalar");
    if (static_cast<int>(coeffs.size()) > degree_of(f))
        throw ValidationError("schema", "scalar has more coefficients than the field degree: " + j.dump());
    if (!f) return FieldScalar(coeffs.front());
    coeffs.resize(static_cast<std::size_t>(f->degree()));
    return FieldScalar(f, coeffs);
}

Json scalar_to_json(const FieldScalar& s, const FieldPtr& f) {
    Json out = Json::array();
    const auto& c = s.coefficients();
    for (int k = 0; k < degree_of(f); ++k)
        out.push_back(k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)].get_str() : std::string("0"));
    return out;
}

FieldVector parse_vector(const Json& j, const FieldPtr& f) {
    if (!j.is_array()) throw ValidationError("schema", "expected a vector, got " + j.dump());
    FieldVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = parse_scalar(j[k], f);
    return v;
}

Json vector_to_json(const FieldVector& v, const FieldPtr& f) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(scalar_to_json(v(k), f));
    return out;
}

Json matrix_to_json(const FieldMatrix& m, const FieldPtr& f) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose(), f));
    return out;
}

ProblemInstance parse_instance(const Json& j) {
    if (!j.is_object()) throw ValidationError("schema", "instance must be a JSON object");
    ProblemInstance inst;
    inst.field = j.contains("field") ? parse_field(j.at("field")) : nullptr;
    const Json& normals = member(j, "normals");
    const Json& offsets = member(j, "offsets");
    if (!normals.is_array() || !offsets.is_array()) throw ValidationError("schema", "normals and offsets must be arrays");
    std::vector<FieldVector> xs;
    for (const auto& x : normals) xs.push_back(parse_vector(x, inst.field));
    std::vector<FieldScalar> ls;
    for (const auto& l : offsets) ls.push_back(parse_scalar(l, inst.field));
    const int n = static_cast<int>(member(j, "n").get<long long>());
    for (const auto& x : xs)
        if (x.size() != n) throw ValidationError("normal length differs from n");
    Quasilattice q;
    if (j.contains("quasilattice") && !j.at("quasilattice").is_null()) {
        std::vector<FieldVector> gens;
        for (const auto& g : j.at("quasilattice")) {
            gens.push_back(parse_vector(g, inst.field));
            if (gens.back().size() != n) throw ValidationError("quasilattice generator length differs from n");
        }
        q = Quasilattice(inst.field, n, gens);
    } else {
        q = Quasilattice::standard(n, inst.field);
    }
    inst.polytope.emplace(inst.field, xs, ls, q);
    if (j.contains("solver")) {
        const Json& s = j.at("solver");
        inst.solver.tolerance = s.value("tolerance", inst.solver.tolerance);
        inst.solver.max_iterations = s.value("max_iterations", inst.solver.max_iterations);
        inst.solver.line_search_shrink = s.value("line_search_shrink", inst.solver.line_search_shrink);
        inst.solver.precision_bits = s.value("precision_bits", inst.solver.precision_bits);
    }
    inst.seed = j.value("seed", std::uint64_t{0});
    return inst;
}

ProblemInstance parse_instance_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("schema", std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_instance(j);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("schema", e.what());
    }
}

Json polytope_to_json(const Polytope& p) {
    const FieldPtr& f = p.field();
    Json normals = Json::array();
    for (const auto& x : p.normals()) normals.push_back(vector_to_json(x, f));
    Json offsets = Json::array();
    for (const auto& l : p.offsets()) offsets.push_back(scalar_to_json(l, f));
    Json gens = Json::array();
    for (const auto& g : p.quasilattice().generators()) gens.push_back(vector_to_json(g, f));
    return Json{{"field", field_to_json(f)}, {"n", p.dim()}, {"normals", normals}, {"offsets", offsets}, {"quasilattice", gens}};
}

Json instance_to_json(const ProblemInstance& inst) {
    Json out = polytope_to_json(*inst.polytope);
    out["solver"] = {{"tolerance", inst.solver.tolerance},
                     {"max_iterations", inst.solver.max_iterations},
                     {"line_search_shrink", inst.solver.line_search_shrink},
                     {"precision_bits", inst.solver.precision_bits}};
    out["seed"] = inst.seed;
    return out;
}

ComplexVector parse_point(const Json& j) {
    if (!j.is_array()) throw ValidationError("schema", "point must be an array of [re, im] pairs");
    ComplexVector z(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& c = j[k];
        if (c.is_number()) {
            z(static_cast<Eigen::Index>(k)) = c.get<double>();
        } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
            z(static_cast<Eigen::Index>(k)) = {c[0].get<double>(), c[1].get<double>()};
        } else {
            throw ValidationError("schema", "bad complex coordinate " + c.dump());
        }
    }
    return z;
}

Json point_to_json(const ComplexVector& z) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < z.size(); ++k) out.push_back({z(k).real(), z(k).imag()});
    return out;
}

Json real_vector_to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
    return out;
}

Json index_set_to_json(const IndexSet& s) {
    Json out = Json::array();
    for (int j : s) out.push_back(j + 1);
    return out;
}

Json group_to_json(const GroupPresentation& g, const FieldPtr& f) {
    Json gens = Json::array();
    for (const auto& v : g.generators_mod_z) gens.push_back(vector_to_json(v, f));
    Json factors = Json::array();
    for (const auto& a : g.invariant_factors) factors.push_back(a.get_str());
    return Json{{"I", index_set_to_json(g.chart)},
                {"coordinates", index_set_to_json(g.coordinates)},
                {"finite", g.finite},
                {"order", order_to_json(g)},
                {"invariant_factors", factors},
                {"generators_mod_Z", gens}};
}

Json faces_to_json(const FaceLattice& lat) {
    Json faces = Json::array();
    for (const auto& f : lat.faces()) {
        faces.push_back({{"id", f.id},
                         {"index_set", index_set_to_json(f.index_set)},
                         {"dim", f.dim},
                         {"r", f.r()},
                         {"regular", f.regular},
                         {"depth", f.depth},
                         {"vertices", f.vertices}});
    }
    Json edges = Json::array();
    for (const auto& [a, b] : lat.hasse_edges()) edges.push_back({a, b});
    return Json{{"faces", faces}, {"hasse", edges}};
}

std::string faces_to_dot(const FaceLattice& lat) {
    std::ostringstream out;
    out << "digraph faces {\n";
    for (const auto& f : lat.faces())
        out << "  f" << f.id << " [label=\"" << format_index_set(f.index_set) << " dim " << f.dim << "\""
            << (f.regular ? "" : ", shape=box") << "];\n";
    for (const auto& [a, b] : lat.hasse_edges()) out << "  f" << a << " -> f" << b << ";\n";
    out << "}\n";
    return out.str();
}

Json gamma_table_to_json(const Polytope& p) {
    Json out = Json::array();
    for (const auto& c : chart_index_sets(p)) out.push_back(group_to_json(gamma_group(p, c), p.field()));
    return out;
}

Json analyze_to_json(const ToricModel& model) {
    const Polytope& p = model.polytope;
    const FaceLattice& lat = model.faces;
    Json vertices = Json::array();
    for (const auto& v : p.vertices()) vertices.push_back(vector_to_json(v, p.field()));
    const int singular = static_cast<int>(lat.singular_faces().size());
    return Json{{"n", p.dim()},
                {"d", p.facet_count()},
                {"vertices", vertices},
                {"faces", static_cast<int>(lat.faces().size())},
                {"regular_faces", static_cast<int>(lat.faces().size()) - singular},
                {"singular_faces", singular},
                {"depth", lat.polytope_depth()},
                {"quasilattice_rank", p.quasilattice().z_rank()},
                {"is_lattice", p.quasilattice().is_lattice()},
                {"gamma", gamma_table_to_json(p)}};
}

Json report_to_json(const StratificationReport& r, const FieldPtr& f) {
    Json strata = Json::array();
    for (const auto& s : r.strata) {
        Json e{{"maximal", s.maximal}, {"complex_dim", s.complex_dim}, {"depth", s.depth}};
        if (!s.maximal) {
            e["face"] = index_set_to_json(s.index_set);
            e["chart"] = index_set_to_json(s.chart);
            e["chart_base"] = index_set_to_json(s.chart_base);
            e["chart_group"] = group_to_json(*s.chart_group, f);
            e["chart_coordinates"] = matrix_to_json(s.chart_coordinates, f);
        }
        if (s.link) {
            const LinkData& l = *s.link;
            Json cone_normals = Json::array();
            for (const auto& v : l.cone_normals) cone_normals.push_back(vector_to_json(v, f));
            Json cone_offsets = Json::array();
            for (const auto& v : l.cone_offsets) cone_offsets.push_back(scalar_to_json(v, f));
            Json weights = Json::array();
            for (const auto& v : l.slice_weights) weights.push_back(scalar_to_json(v, f));
            Json sub = Json::array();
            for (const auto& g : l.span_quasilattice.generators()) sub.push_back(vector_to_json(g, f));
            e["link"] = {{"span_basis", matrix_to_json(l.span_basis, f)},
                         {"span_quasilattice", sub},
                         {"cone", {{"normals", cone_normals}, {"offsets", cone_offsets}}},
                         {"slice_weights", weights},
                         {"slice_normal", vector_to_json(l.slice_normal, f)},
                         {"slice_level", scalar_to_json(l.slice_level, f)},
                         {"slice_point", vector_to_json(l.slice_point, f)},
                         {"slice_basis", matrix_to_json(l.slice_basis, f)},
                         {"link_polytope", polytope_to_json(*l.link_polytope)},
                         {"face_map", l.face_map},
                         {"cone_group_dim", l.cone_group_dim},
                         {"link_group_dim", l.link_group_dim},
                         {"kernel_split", l.kernel_split},
                         {"link_real_dim", l.link_real_dim},
                         {"stated_link_real_dim", l.stated_link_real_dim},
                         {"dimension_discrepancy", l.dimension_discrepancy()},
                         {"report", report_to_json(*l.report, f)}};
        }
        strata.push_back(std::move(e));
    }
    Json edges = Json::array();
    for (const auto& [a, b] : r.poset_edges) edges.push_back({a, b});
    return Json{{"n", r.n}, {"d", r.d}, {"depth", r.polytope_depth}, {"strata", strata}, {"poset_edges", edges}};
}

Json retraction_to_json(const ToricModel& model, const OrbitClass& c, const SolverConfig& cfg) {
    return Json{{"point", point_to_json(c.z)},
                {"zeros", index_set_to_json(c.zeros)},
                {"face", index_set_to_json(model.faces.face(c.face).index_set)},
                {"closed", c.closed},
                {"closed_rep", point_to_json(c.closed_rep)},
                {"x", point_to_json(c.retracted.x)},
                {"xi", real_vector_to_json(c.retracted.xi)},
                {"residual", c.retracted.residual},
                {"iterations", c.retracted.iterations},
                {"tolerance", cfg.tolerance},
                {"exactness", to_string(c.exactness)}};
}

Json verdict_to_json(const ToricModel& model, const EquivalenceVerdict& v) {
    auto pair = [&](const CanonicalPair& c) {
        return Json{{"x", point_to_json(c.normalized)},
                    {"xi", real_vector_to_json(c.xi)},
                    {"face", index_set_to_json(model.faces.face(c.face).index_set)}};
    };
    return Json{{"equivalent", v.equivalent},
                {"exactness", to_string(v.exactness)},
                {"canonical", pair(v.first)},
                {"canonical_other", pair(v.second)}};
}

Json error_to_json(const Error& e) { return Json{{"error", e.code()}, {"message", e.what()}}; }

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw PreconditionError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw PreconditionError("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw PreconditionError("cannot move output into place: " + ec.message());
    }
}

}  // namespace toricq
