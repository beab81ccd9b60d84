#include "toricq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "toricq/linalg.hpp"

namespace toricq {

namespace {

constexpr int kMaxWitnesses = 5;
constexpr double kSolverAgreement = 1e-8;

class Suite {
public:
    Suite(std::string name, double tol) {
        r_.name = std::move(name);
        r_.tolerance = tol;
    }

    // Runs one sample, turning library errors into failures.
    void sample(int index, const std::function<std::string()>& body) {
        ++r_.samples;
        std::string why;
        try {
            why = body();
        } catch (const Error& e) {
            why = std::string(e.code()) + ": " + e.what();
        }
        if (why.empty()) return;
        ++r_.failures;
        if (static_cast<int>(r_.witnesses.size()) < kMaxWitnesses)
            r_.witnesses.push_back("sample " + std::to_string(index) + ": " + why);
    }

    PropertyResult take() { return std::move(r_); }

private:
    PropertyResult r_;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

ComplexVector random_point(int d, const IndexSet& zeros, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mod(0.2, 2.0), ang(0.0, 2 * std::numbers::pi);
    ComplexVector z(d);
    for (int j = 0; j < d; ++j) z(j) = std::polar(mod(rng), ang(rng));
    for (int j : zeros) z(j) = 0.0;
    return z;
}

FieldVector random_polytope_point(const Polytope& p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(0, 4);
    FieldVector c = FieldVector::Zero(p.dim());
    long total = 0;
    for (const auto& v : p.vertices()) {
        const int k = w(rng);
        if (k == 0) continue;
        c += v * FieldScalar(k);
        total += k;
    }
    if (total == 0) return p.vertices().front();
    return c * FieldScalar(Rational(1, total));
}

NCElement real_part_only(const NCSampler& sample, std::mt19937_64& rng, int d) {
    NCElement g = sample(rng, 2.0);
    g.theta = FieldVector::Zero(d);
    return g;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

bool standard_simple_rational(const Polytope& p, const FaceLattice& lat) {
    if (p.field()) return false;
    if (!lat.singular_faces().empty()) return false;
    const Quasilattice& q = p.quasilattice();
    if (!q.is_lattice() || q.denominator() != 1) return false;
    const IntMatrix basis = q.basis_certificate();
    if (!(basis == IntMatrix::identity(p.dim()))) return false;
    for (const auto& x : p.normals()) {
        Integer g = 0;
        for (Eigen::Index i = 0; i < x.size(); ++i) g = gcd(g, x(i).rational_part().get_num());
        if (g != 1) return false;
    }
    return true;
}

}  // namespace

bool VerificationRun::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.failures == 0; });
}

ComplexVector sample_admissible_point(const FaceLattice& lat, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, lat.faces().size() - 1);
    const Face& f = lat.face(static_cast<int>(pick(rng)));
    std::bernoulli_distribution keep(0.5);
    IndexSet zeros;
    for (int j : f.index_set)
        if (keep(rng)) zeros.push_back(j);
    return random_point(lat.facet_count(), zeros, rng);
}

VerificationRun run_verification(const ProblemInstance& inst, int samples, std::uint64_t seed) {
    if (samples < 1) throw PreconditionError("sample count must be positive");
    ToricModel model(*inst.polytope);
    const Polytope& p = model.polytope;
    const FaceLattice& lat = model.faces;
    const MomentData& m = model.moment;
    const SolverConfig& cfg = inst.solver;
    const int d = p.facet_count();
    NCSampler sample(p, model.sequence);
    std::mt19937_64 rng(seed);

    VerificationRun run;
    run.seed = seed;
    run.samples = samples;

    {
        Suite s("serialization_roundtrip", 0.0);
        s.sample(0, [&]() -> std::string {
            ProblemInstance back = parse_instance(instance_to_json(inst));
            const Polytope& q = *back.polytope;
            bool same = q.dim() == p.dim() && q.facet_count() == d;
            for (int j = 0; same && j < d; ++j) same = q.normal(j) == p.normal(j) && q.offset(j) == p.offset(j);
            same = same && q.quasilattice().generators() == p.quasilattice().generators();
            if (!same) return "parsed instance differs";
            if (instance_to_json(back).dump() != instance_to_json(inst).dump()) return "serialized text differs";
            return "";
        });
        run.properties.push_back(s.take());
    }

    {
        Suite grad("gradient_check", 1e-5);
        Suite hess("hessian_positive", 0.0);
        std::normal_distribution<double> step(0.0, 0.3);
        for (int k = 0; k < samples; ++k) {
            ComplexVector z = random_point(d, lat.face(static_cast<int>(rng() % lat.faces().size())).index_set, rng);
            ReducedObjective f(m, z);
            Eigen::VectorXd c(f.dim());
            for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = step(rng);
            grad.sample(k, [&]() -> std::string {
                const Eigen::VectorXd g = f.gradient(c);
                Eigen::VectorXd fd(c.size());
                const double h = 1e-6;
                for (Eigen::Index i = 0; i < c.size(); ++i) {
                    Eigen::VectorXd e = Eigen::VectorXd::Zero(c.size());
                    e(i) = h;
                    fd(i) = (f.value(c + e) - f.value(c - e)) / (2 * h);
                }
                const double err = (g - fd).norm() / std::max(1.0, g.norm());
                return err <= 1e-5 ? "" : "relative error " + fmt(err);
            });
            hess.sample(k, [&]() -> std::string {
                if (f.dim() == 0) return "";
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.hessian(c));
                const double low = es.eigenvalues().minCoeff();
                return low > 0 ? "" : "smallest eigenvalue " + fmt(low);
            });
        }
        run.properties.push_back(grad.take());
        run.properties.push_back(hess.take());
    }

    {
        Suite unique("retraction_uniqueness", kSolverAgreement);
        Suite invariant("a_invariance", kSolverAgreement);
        Suite image("image_in_polytope", 1e-8);
        std::normal_distribution<double> start(0.0, 0.5);
        for (int k = 0; k < samples; ++k) {
            ComplexVector z = sample_admissible_point(lat, rng);
            std::optional<OrbitClass> found;
            unique.sample(k, [&]() -> std::string {
                found = classify_orbit(model, z, cfg);
                const OrbitClass& c = *found;
                for (int t = 0; t < 2; ++t) {
                    ReducedObjective f(m, c.closed_rep);
                    Eigen::VectorXd c0(f.dim());
                    for (Eigen::Index i = 0; i < c0.size(); ++i) c0(i) = start(rng);
                    auto other = retract(m, c.closed_rep, cfg, c0);
                    const double diff = max_abs_diff(other.x, c.retracted.x);
                    if (diff > kSolverAgreement) return "start " + std::to_string(t) + " differs by " + fmt(diff);
                }
                return "";
            });
            if (!found) {
                invariant.sample(k, [] { return std::string("retraction failed"); });
                image.sample(k, [] { return std::string("retraction failed"); });
                continue;
            }
            const OrbitClass& c = *found;
            const RetractionResult& base = c.retracted;
            invariant.sample(k, [&]() -> std::string {
                auto moved = retract(m, act(real_part_only(sample, rng, d), c.closed_rep), cfg);
                const double diff = max_abs_diff(moved.x, base.x);
                return diff <= kSolverAgreement ? "" : "translate differs by " + fmt(diff);
            });
            image.sample(k, [&]() -> std::string {
                for (int j = 0; j < d; ++j) {
                    const double slack = base.xi.dot(shadow(p.normal(j)).col(0)) - to_double(p.offset(j));
                    if (slack < -1e-8) return "facet " + std::to_string(j + 1) + " violated by " + fmt(-slack);
                    if (std::abs(slack - std::norm(base.x(j))) > 1e-8) return "modulus mismatch at " + std::to_string(j + 1);
                }
                return "";
            });
        }
        run.properties.push_back(unique.take());
        run.properties.push_back(invariant.take());
        run.properties.push_back(image.take());
    }

    {
        Suite s("zero_level_per_face", 1e-9);
        for (const auto& f : lat.faces()) {
            s.sample(f.id, [&]() -> std::string {
                FieldVector xi = FieldVector::Zero(p.dim());
                for (int v : f.vertices) xi += p.vertices()[v];
                xi = xi * FieldScalar(Rational(1, static_cast<long>(f.vertices.size())));
                ComplexVector x(d);
                for (int j = 0; j < d; ++j) x(j) = std::sqrt(std::max(0.0, to_double(p.slack(xi, j))));
                if (support_zeros(x) != f.index_set) return "support differs from the face";
                const double res = psi(m, x).norm();
                return res <= 1e-9 ? "" : "residual " + fmt(res);
            });
        }
        run.properties.push_back(s.take());
    }

    {
        Suite flow("closed_orbit_flow", 1e-6);
        Suite idem("representative_idempotent", 0.0);
        for (int k = 0; k < samples; ++k) {
            ComplexVector z = sample_admissible_point(lat, rng);
            flow.sample(k, [&]() -> std::string {
                OrbitClass c = classify_orbit(model, z, cfg);
                const IndexSet& ie = lat.face(c.face).index_set;
                auto y = closing_flow(model, c);
                if (c.closed) {
                    if (y) return "closed orbit with a closing flow";
                    return c.closed_rep == z ? "" : "closed orbit moved by its representative";
                }
                if (!y) return "nonclosed orbit without a closing flow";
                if (!all_zero(exact_product(p.normal_matrix(), *y))) return "flow leaves the kernel";
                NCElement g{FieldVector::Zero(d), Eigen::VectorXd()};
                ComplexVector prev = z;
                for (double t : {0.5, 1.0, 2.0, 4.0}) {
                    g.y = t * shadow(*y);
                    ComplexVector w = act(g, z);
                    for (int j : ie)
                        if (std::abs(w(j)) > std::abs(prev(j))) return "coordinate " + std::to_string(j + 1) + " grows";
                    prev = w;
                }
                for (int j : ie)
                    if (std::abs(prev(j)) > 1e-6) return "coordinate " + std::to_string(j + 1) + " does not decay";
                return "";
            });
            idem.sample(k, [&]() -> std::string {
                OrbitClass c = classify_orbit(model, z, cfg);
                OrbitClass again = classify_orbit(model, c.closed_rep, cfg);
                return again.closed && again.closed_rep == c.closed_rep ? "" : "representative not stable";
            });
        }
        run.properties.push_back(flow.take());
        run.properties.push_back(idem.take());
    }

    {
        Suite s("p_invariance", 1e-7);
        for (int k = 0; k < samples; ++k) {
            FieldVector xi = random_polytope_point(p, rng);
            FieldVector eta = random_polytope_point(p, rng);
            ComplexVector w = random_point(d, {}, rng);
            std::vector<NCElement> gs;
            for (int t = 0; t < 10; ++t) gs.push_back(sample(rng));
            s.sample(k, [&]() -> std::string {
                PFunction f(p, xi, eta);
                const double base = f.log_value(w);
                for (const auto& g : gs) {
                    const double rel = std::abs(std::expm1(f.log_value(act(g, w)) - base));
                    if (rel > 1e-7) return "relative change " + fmt(rel);
                }
                return "";
            });
        }
        run.properties.push_back(s.take());
    }

    {
        Suite s("equivalence_axioms", 1e-6);
        for (int k = 0; k < samples; ++k) {
            ComplexVector z = sample_admissible_point(lat, rng);
            ComplexVector w = act(sample(rng), z);
            ComplexVector u = act(sample(rng), w);
            ComplexVector other = sample_admissible_point(lat, rng);
            s.sample(k, [&]() -> std::string {
                if (!equivalent(model, z, z, cfg).equivalent) return "not reflexive";
                if (!equivalent(model, z, w, cfg).equivalent || !equivalent(model, w, z, cfg).equivalent)
                    return "translate not equivalent";
                if (!equivalent(model, w, u, cfg).equivalent || !equivalent(model, z, u, cfg).equivalent)
                    return "not transitive";
                if (equivalent(model, z, other, cfg).equivalent != equivalent(model, other, z, cfg).equivalent)
                    return "not symmetric";
                return "";
            });
        }
        run.properties.push_back(s.take());
    }

    {
        Suite s("link_identities", 0.0);
        for (int id : lat.singular_faces()) {
            s.sample(id, [&]() -> std::string {
                const Face& f = lat.face(id);
                LinkData link = build_link(p, lat, id);
                if (link.cone_group_dim != f.r() - p.dim() + f.dim) return "cone group dimension";
                if (link.link_group_dim != link.cone_group_dim + 1) return "link group dimension";
                if (!link.kernel_split) return "kernel does not split";
                FaceLattice link_lat(*link.link_polytope);
                int above = 0;
                for (const auto& g : lat.faces())
                    if (g.id != id && lat.leq(id, g.id)) ++above;
                if (above != static_cast<int>(link_lat.faces().size())) return "face count mismatch";
                for (const auto& h : link_lat.faces()) {
                    const Face& g = lat.face(link.face_map[static_cast<std::size_t>(h.id)]);
                    if (h.dim != g.dim - f.dim - 1 || h.regular != g.regular) return "face correspondence broken";
                }
                return "";
            });
        }
        run.properties.push_back(s.take());
    }

    if (standard_simple_rational(p, lat)) {
        Suite s("toric_recovery", 0.0);
        int k = 0;
        for (const auto& chart : chart_index_sets(p)) {
            s.sample(k++, [&]() -> std::string {
                GroupPresentation g = gamma_group(p, chart);
                IntMatrix x(p.dim(), p.dim());
                for (int i = 0; i < p.dim(); ++i)
                    for (int r = 0; r < p.dim(); ++r) x(r, i) = p.normal(chart[static_cast<std::size_t>(i)])(r).rational_part().get_num();
                Integer det = abs(int_determinant(x));
                return g.finite && *g.order == det ? "" : "group order differs from |det X_I|";
            });
        }
        s.sample(k, [&]() -> std::string {
            for (const auto& f : lat.faces())
                for (const auto& g : lat.faces())
                    if (lat.leq(f.id, g.id) != is_subset(g.index_set, f.index_set)) return "orbit order differs from face order";
            for (const auto& f : lat.faces()) {
                ComplexVector z = random_point(d, f.index_set, rng);
                auto c = classify_orbit(model, z, cfg);
                if (!c.closed || c.face != f.id) return "face " + format_index_set(f.index_set) + " has no orbit";
            }
            return "";
        });
        run.properties.push_back(s.take());
    }

    std::sort(run.properties.begin(), run.properties.end(),
              [](const PropertyResult& a, const PropertyResult& b) { return a.name < b.name; });
    return run;
}

Json run_to_json(const VerificationRun& run) {
    Json props = Json::array();
    for (const auto& r : run.properties)
        props.push_back({{"name", r.name},
                         {"samples", r.samples},
                         {"failures", r.failures},
                         {"passed", r.failures == 0},
                         {"tolerance", r.tolerance},
                         {"witnesses", r.witnesses}});
    return Json{{"seed", run.seed}, {"samples", run.samples}, {"passed", run.passed()}, {"properties", props}};
}

}  // namespace toricq
