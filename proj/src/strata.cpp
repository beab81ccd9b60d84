#include "toricq/strata.hpp"

#include <sstream>

#include "toricq/combinatorics.hpp"
#include "toricq/linalg.hpp"

namespace toricq {

namespace {

FieldMatrix columns(const Polytope& p, const IndexSet& which) {
    FieldMatrix m(p.dim(), static_cast<Eigen::Index>(which.size()));
    for (std::size_t k = 0; k < which.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = p.normal(which[k]);
    return m;
}

FieldMatrix stack(const std::vector<FieldVector>& cols, Eigen::Index rows) {
    FieldMatrix m(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = cols[k];
    return m;
}

FieldVector in_basis(const FieldMatrix& basis, const FieldVector& v) {
    auto c = solve(basis, v);
    if (!c) throw InternalError("vector outside the span of its basis");
    return *c;
}

}  // namespace

std::optional<int> StratificationReport::stratum_of_face(int face) const {
    for (std::size_t k = 0; k < strata.size(); ++k)
        if (!strata[k].maximal && strata[k].face == face) return static_cast<int>(k);
    return std::nullopt;
}

LinkData build_link(const Polytope& p, const FaceLattice& lat, int face) {
    const Face& f = lat.face(face);
    if (f.regular) throw PreconditionError("links are built only for singular faces");
    const int n = p.dim();
    const int m = n - f.dim;

    LinkData out;
    out.face = face;
    out.face_dim = f.dim;
    out.index_set = f.index_set;

    FieldMatrix span = columns(p, f.index_set);
    const auto ech = row_echelon(span);
    std::vector<int> pivots(ech.pivots.begin(), ech.pivots.end());
    out.span_basis = select_columns(span, pivots);
    if (out.span_basis.cols() != m) throw InternalError("face span has the wrong dimension");

    FieldMatrix ann = nullspace(FieldMatrix(out.span_basis.transpose())).transpose();
    if (ann.rows() == 0) ann = FieldMatrix(0, n);
    std::vector<FieldVector> sub;
    for (const auto& g : p.quasilattice().intersect_subspace(ann)) sub.push_back(in_basis(out.span_basis, g));
    out.span_quasilattice = Quasilattice(p.field(), m, sub);

    out.slice_normal = FieldVector::Zero(m);
    out.slice_level = FieldScalar(1);
    for (int j : f.index_set) {
        out.cone_normals.push_back(in_basis(out.span_basis, p.normal(j)));
        out.cone_offsets.push_back(p.offset(j));
        out.slice_weights.emplace_back(1);
        out.slice_normal += out.cone_normals.back();
        out.slice_level += p.offset(j);
    }
    FieldMatrix row = out.slice_normal.transpose();
    FieldVector level(1);
    level(0) = out.slice_level;
    auto xi0 = solve(row, level);
    if (!xi0) throw InternalError("slice normal vanishes");
    out.slice_point = *xi0;
    out.slice_basis = nullspace(row);

    std::vector<FieldVector> normals;
    std::vector<FieldScalar> offsets;
    for (std::size_t k = 0; k < out.cone_normals.size(); ++k) {
        normals.push_back(exact_product(FieldMatrix(out.slice_basis.transpose()), out.cone_normals[k]));
        offsets.push_back(out.cone_offsets[k] - out.slice_point.dot(out.cone_normals[k]));
    }
    std::vector<FieldVector> link_gens;
    for (const auto& g : out.span_quasilattice.generators())
        link_gens.push_back(exact_product(FieldMatrix(out.slice_basis.transpose()), g));
    try {
        out.link_polytope = std::make_shared<const Polytope>(p.field(), normals, offsets,
                                                             Quasilattice(p.field(), m - 1, link_gens));
    } catch (const ValidationError& e) {
        throw InternalError(std::string("link polytope is degenerate: ") + e.what());
    }

    FaceLattice link_lat(*out.link_polytope);
    for (const auto& h : link_lat.faces()) {
        IndexSet image;
        for (int k : h.index_set) image.push_back(f.index_set[k]);
        auto g = lat.find(image);
        if (!g) throw InternalError("link face has no counterpart");
        out.face_map.push_back(*g);
    }

    FieldMatrix cone_matrix = stack(out.cone_normals, m);
    FieldMatrix link_matrix = out.link_polytope->normal_matrix();
    FieldMatrix cone_kernel = nullspace(cone_matrix);
    FieldMatrix link_kernel = nullspace(link_matrix);
    out.cone_group_dim = static_cast<int>(cone_kernel.cols());
    out.link_group_dim = static_cast<int>(link_kernel.cols());
    FieldMatrix split(f.r(), cone_kernel.cols() + 1);
    split.leftCols(cone_kernel.cols()) = cone_kernel;
    for (int k = 0; k < f.r(); ++k) split(k, cone_kernel.cols()) = out.slice_weights[k];
    out.kernel_split = all_zero(exact_product(link_matrix, split)) && exact_rank(split) == link_kernel.cols();

    out.link_real_dim = 2 * m - 1;
    out.stated_link_real_dim = 2 * m + 1;
    out.report = std::make_shared<const StratificationReport>(build_stratification(*out.link_polytope, link_lat));
    return out;
}

StratificationReport build_stratification(const Polytope& p) { return build_stratification(p, FaceLattice(p)); }

StratificationReport build_stratification(const Polytope& p, const FaceLattice& lat) {
    StratificationReport out;
    out.n = p.dim();
    out.d = p.facet_count();
    out.polytope_depth = lat.polytope_depth();

    StratumEntry top;
    top.maximal = true;
    top.complex_dim = p.dim();
    out.strata.push_back(top);

    const auto charts = chart_index_sets(p);
    for (int id : lat.singular_faces()) {
        const Face& f = lat.face(id);
        StratumEntry e;
        e.face = id;
        e.index_set = f.index_set;
        e.complex_dim = f.dim;
        e.depth = f.depth;
        for (const auto& c : charts)
            if (static_cast<int>(set_intersection_of(c, f.index_set).size()) == p.dim() - f.dim) {
                e.chart = c;
                break;
            }
        if (e.chart.empty()) throw InternalError("singular face has no chart");
        e.chart_base = set_difference_of(e.chart, f.index_set);
        e.chart_group = gamma_check(p, e.chart, f);
        auto inv = exact_inverse(columns(p, e.chart));
        e.chart_coordinates = exact_product(*inv, p.normal_matrix());
        e.link = build_link(p, lat, id);
        out.strata.push_back(std::move(e));
    }

    const int count = static_cast<int>(out.strata.size());
    auto below = [&](int a, int b) {
        if (a == b || out.strata[a].maximal) return false;
        if (out.strata[b].maximal) return true;
        return lat.leq(out.strata[a].face, out.strata[b].face);
    };
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            if (!below(a, b)) continue;
            bool cover = true;
            for (int c = 0; c < count && cover; ++c)
                if (below(a, c) && below(c, b)) cover = false;
            if (cover) out.poset_edges.emplace_back(a, b);
        }
    return out;
}

LocalModel local_model(const Polytope& p, const StratificationReport& report, int face) {
    auto k = report.stratum_of_face(face);
    if (!k) throw PreconditionError("face is not a singular stratum of the report");
    const StratumEntry& e = report.strata[*k];
    LocalModel out;
    out.face = face;
    out.chart = e.chart;
    out.base_coordinates = e.chart_base;
    out.base_dim = static_cast<int>(e.chart_base.size());
    out.base_group = *e.chart_group;
    out.cone_group_dim = e.link->cone_group_dim;
    out.cone_complex_dim = static_cast<int>(e.index_set.size()) - e.link->cone_group_dim;
    out.chart_coordinates = e.chart_coordinates;
    for (int c = 0; c < p.facet_count(); ++c) {
        FieldScalar b = p.offset(c);
        for (std::size_t i = 0; i < e.chart.size(); ++i)
            b -= e.chart_coordinates(static_cast<Eigen::Index>(i), c) * p.offset(e.chart[i]);
        out.chart_offsets.push_back(b);
    }
    return out;
}

MomentData derived_moment_data(LinkMomentKind kind, const LinkData& link) {
    const int r = static_cast<int>(link.cone_normals.size());
    const Eigen::Index m = link.slice_normal.size();
    FieldMatrix cone = stack(link.cone_normals, m);
    if (kind == LinkMomentKind::cone) return make_moment_data(cone, std::vector<FieldScalar>(r, FieldScalar(0)));
    // offsets -<xi', X_j> with <xi', X_0> = 1 give the slice coordinate sum s_j |z_j|^2 - 1
    FieldMatrix row = link.slice_normal.transpose();
    FieldVector one(1);
    one(0) = FieldScalar(1);
    FieldVector unit = *solve(row, one);
    std::vector<FieldScalar> offsets;
    for (const auto& a : link.cone_normals) offsets.push_back(-unit.dot(a));
    return make_moment_data(link.link_polytope->normal_matrix(), offsets);
}

std::string to_dot(const StratificationReport& report) {
    std::ostringstream out;
    out << "digraph strata {\n";
    for (std::size_t k = 0; k < report.strata.size(); ++k) {
        const auto& s = report.strata[k];
        out << "  s" << k << " [label=\"";
        if (s.maximal) out << "maximal";
        else out << "F" << format_index_set(s.index_set);
        out << " dim " << s.complex_dim << "\"];\n";
    }
    for (const auto& [a, b] : report.poset_edges) out << "  s" << a << " -> s" << b << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace toricq
