#include "toricq/orbit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "toricq/combinatorics.hpp"
#include "toricq/linalg.hpp"

namespace toricq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FieldMatrix columns(const Polytope& p, const IndexSet& which) {
    FieldMatrix m(p.dim(), static_cast<Eigen::Index>(which.size()));
    for (std::size_t k = 0; k < which.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = p.normal(which[k]);
    return m;
}

// Rows span the annihilator of span{X_j : j in I}.
FieldMatrix annihilator(const Polytope& p, const IndexSet& which) {
    FieldMatrix span = columns(p, which);
    FieldMatrix t = span.transpose();
    if (t.rows() == 0) t = FieldMatrix(0, p.dim());
    return nullspace(t).transpose();
}

// Images of the quasilattice generators in the quotient by span{X_j : j in I},
// in the coordinates given by `ann`.
FieldMatrix quotient_generators(const Polytope& p, const FieldMatrix& ann) {
    const auto& gens = p.quasilattice().generators();
    FieldMatrix g(ann.rows(), static_cast<Eigen::Index>(gens.size()));
    for (std::size_t k = 0; k < gens.size(); ++k)
        g.col(static_cast<Eigen::Index>(k)) = exact_product(ann, gens[k]);
    return g;
}

// Functionals phi with phi(g) in Z for every column g of `gens`. A vector
// lies in the closure of the group generated by the columns exactly when
// every such phi takes an integer value on it.
std::vector<Eigen::VectorXd> integral_functionals(const FieldMatrix& gens, int degree) {
    const Eigen::Index r = gens.cols();
    FieldMatrix relations = nullspace(gens);
    IntMatrix u;
    if (relations.cols() == 0) {
        u = IntMatrix::identity(static_cast<int>(r));
    } else {
        std::vector<std::vector<Rational>> rows;
        for (Eigen::Index c = 0; c < relations.cols(); ++c)
            for (int e = 0; e < degree; ++e) {
                std::vector<Rational> row(static_cast<std::size_t>(r));
                for (Eigen::Index i = 0; i < r; ++i) {
                    const auto& co = relations(i, c).coefficients();
                    if (e < static_cast<int>(co.size())) row[static_cast<std::size_t>(i)] = co[static_cast<std::size_t>(e)];
                }
                rows.push_back(std::move(row));
            }
        u = integer_kernel(clear_denominators(rows).first);
    }
    FieldMatrix gt = gens.transpose();
    std::vector<Eigen::VectorXd> out;
    for (int k = 0; k < u.rows(); ++k) {
        FieldVector rhs(r);
        for (Eigen::Index i = 0; i < r; ++i) rhs(i) = FieldScalar(Rational(u(k, static_cast<int>(i))));
        auto phi = solve(gt, rhs);
        if (!phi) throw InternalError("integral functional does not exist");
        out.push_back(shadow(*phi));
    }
    return out;
}

double turn_of(std::complex<double> ratio) { return std::arg(ratio) / kTwoPi; }

void require_zero_level(const MomentData& m, const ComplexVector& x, double tol) {
    if (x.size() != m.d) throw PreconditionError("point has the wrong number of coordinates");
    if (!(psi(m, x).norm() <= tol)) throw PreconditionError("point is not on the zero level of the moment map");
}

}  // namespace

ToricModel::ToricModel(Polytope p)
    : polytope(std::move(p)), faces(polytope), sequence(kernel_data(polytope)), moment(make_moment_data(polytope, faces)) {}

const char* to_string(Exactness e) { return e == Exactness::exact ? "exact" : "approximate"; }

OrbitClass classify_orbit(const ToricModel& model, const ComplexVector& z, const SolverConfig& cfg) {
    auto face = model.faces.cd_delta_membership(z);
    if (!face) throw DomainError("point lies outside the admissible open set");
    OrbitClass out;
    out.z = z;
    out.zeros = support_zeros(z);
    out.face = *face;
    const IndexSet& ie = model.faces.face(*face).index_set;
    out.closed = out.zeros == ie;
    out.closed_rep = z;
    for (int j : ie) out.closed_rep(j) = 0.0;
    out.retracted = retract(model.moment, out.closed_rep, cfg);
    return out;
}

std::optional<FieldVector> closing_flow(const ToricModel& model, const OrbitClass& orbit) {
    if (orbit.closed) return std::nullopt;
    const Polytope& p = model.polytope;
    const IndexSet& ie = model.faces.face(orbit.face).index_set;
    const IndexSet forced = set_difference_of(ie, orbit.zeros);
    FieldVector total = FieldVector::Zero(p.facet_count());
    for (int j : forced) {
        std::vector<int> pool;
        for (int l : forced)
            if (l != j) pool.push_back(l);
        // X_j + sum mu_l X_l lies in span{X_k : k in I_z} with mu >= 0
        std::optional<FieldVector> found;
        for (int size = 0; size <= static_cast<int>(pool.size()) && !found; ++size) {
            for_each_subset_of(pool, size, [&](const std::vector<int>& s) {
                if (found) return;
                IndexSet cols = s;
                cols.insert(cols.end(), orbit.zeros.begin(), orbit.zeros.end());
                FieldVector rhs = -p.normal(j);
                auto sol = solve(columns(p, cols), rhs);
                if (!sol) return;
                for (std::size_t k = 0; k < s.size(); ++k)
                    if (sign((*sol)(static_cast<Eigen::Index>(k))) < 0) return;
                FieldVector y = FieldVector::Zero(p.facet_count());
                y(j) = 1;
                for (std::size_t k = 0; k < cols.size(); ++k) y(cols[k]) += (*sol)(static_cast<Eigen::Index>(k));
                found = y;
            });
        }
        if (!found) throw InternalError("no closing flow for a forced coordinate");
        total += *found;
    }
    if (!all_zero(exact_product(model.sequence.pi, total))) throw InternalError("closing flow leaves the kernel");
    return total;
}

PFunction::PFunction(const Polytope& p, const FieldVector& xi, const FieldVector& eta) {
    if (xi.size() != p.dim() || eta.size() != p.dim()) throw PreconditionError("polytope point has the wrong dimension");
    if (!p.contains(xi) || !p.contains(eta)) throw PreconditionError("P-function points must lie in the polytope");
    exponents_ = FieldVector(p.facet_count());
    for (int j = 0; j < p.facet_count(); ++j) exponents_(j) = p.slack(xi, j) - p.slack(eta, j);
    shadow_ = shadow(exponents_);
}

double PFunction::log_value(const ComplexVector& w) const {
    if (w.size() != exponents_.size()) throw PreconditionError("point has the wrong number of coordinates");
    double s = 0.0;
    bool vanishes = false;
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        const int sg = sign(exponents_(j));
        if (sg == 0) continue;
        if (std::abs(w(j)) == 0.0) {
            if (sg < 0) throw DomainError("P-function evaluated where a negative exponent meets a zero coordinate");
            vanishes = true;
            continue;
        }
        s += shadow_(j) * std::log(std::abs(w(j)));
    }
    return vanishes ? -std::numeric_limits<double>::infinity() : s;
}

double PFunction::operator()(const ComplexVector& w) const { return std::exp(log_value(w)); }

OrbitVerdict n_orbit_equal(const ToricModel& model, const ComplexVector& x, const ComplexVector& y, double tol) {
    require_zero_level(model.moment, x, tol);
    require_zero_level(model.moment, y, tol);
    OrbitVerdict out;
    const IndexSet zeros = support_zeros(x);
    if (zeros != support_zeros(y)) return out;
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (std::abs(std::abs(x(j)) - std::abs(y(j))) > tol * std::max(1.0, std::abs(x(j)))) return out;

    const Polytope& p = model.polytope;
    FieldMatrix ann = annihilator(p, zeros);
    if (ann.rows() == 0) {
        out.equal = true;
        return out;
    }
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (x(j) != 0.0) delta(j) = turn_of(y(j) / x(j));
    Eigen::VectorXd v = shadow(ann) * (model.moment.pi * delta);
    for (const auto& phi : integral_functionals(quotient_generators(p, ann), p.quasilattice().expansion_degree())) {
        const double t = phi.dot(v);
        if (std::abs(t - std::round(t)) > tol) return out;
    }
    out.equal = true;
    return out;
}

OrbitVerdict n_orbit_equal(const ToricModel& model, const ExactPoint& x, const ExactPoint& y) {
    const Polytope& p = model.polytope;
    const int d = p.facet_count();
    for (const ExactPoint* e : {&x, &y}) {
        if (e->modulus_sq.size() != d || e->turns.size() != d) throw PreconditionError("point has the wrong number of coordinates");
        FieldVector u(d);
        for (int j = 0; j < d; ++j) {
            if (sign(e->modulus_sq(j)) < 0) throw PreconditionError("squared modulus is negative");
            u(j) = e->modulus_sq(j) + p.offset(j);
        }
        if (!all_zero(exact_product(FieldMatrix(model.sequence.kernel.transpose()), u)))
            throw PreconditionError("point is not on the zero level of the moment map");
    }
    OrbitVerdict out;
    out.exactness = Exactness::exact;
    IndexSet zeros;
    for (int j = 0; j < d; ++j) {
        if (is_zero(x.modulus_sq(j)) != is_zero(y.modulus_sq(j))) return out;
        if (!(x.modulus_sq(j) == y.modulus_sq(j))) return out;
        if (is_zero(x.modulus_sq(j))) zeros.push_back(j);
    }
    FieldMatrix ann = annihilator(p, zeros);
    if (ann.rows() == 0) {
        out.equal = true;
        return out;
    }
    FieldVector delta = FieldVector::Zero(d);
    for (int j = 0; j < d; ++j)
        if (!is_zero(x.modulus_sq(j))) delta(j) = y.turns(j) - x.turns(j);
    FieldMatrix gens = quotient_generators(p, ann);
    std::vector<FieldVector> cols;
    for (Eigen::Index k = 0; k < gens.cols(); ++k) cols.push_back(gens.col(k));
    Quasilattice image(p.field(), static_cast<int>(ann.rows()), cols);
    out.equal = image.contains(exact_product(ann, exact_product(model.sequence.pi, delta)));
    return out;
}

ComplexVector normalize_phase(const ComplexVector& x) {
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (x(j) != 0.0) return x * (std::abs(x(j)) / x(j));
    return x;
}

EquivalenceVerdict equivalent(const ToricModel& model, const ComplexVector& z, const ComplexVector& w,
                              const SolverConfig& cfg, double tol) {
    const OrbitClass a = classify_orbit(model, z, cfg);
    const OrbitClass b = classify_orbit(model, w, cfg);
    EquivalenceVerdict out;
    out.first = {a.retracted.x, a.retracted.xi, a.face, normalize_phase(a.retracted.x)};
    out.second = {b.retracted.x, b.retracted.xi, b.face, normalize_phase(b.retracted.x)};
    if (a.face != b.face) {
        // faces come from exact zero patterns
        out.exactness = Exactness::exact;
        return out;
    }
    const OrbitVerdict v = n_orbit_equal(model, a.retracted.x, b.retracted.x, tol);
    out.equivalent = v.equal;
    out.exactness = v.exactness;
    return out;
}

StratumLabel stratum_of(const ToricModel& model, const ComplexVector& z) {
    auto face = model.faces.cd_delta_membership(z);
    if (!face) throw DomainError("point lies outside the admissible open set");
    return {model.faces.face(*face).regular, *face};
}

}  // namespace toricq
