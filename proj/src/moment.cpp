#include "toricq/moment.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "toricq/linalg.hpp"

namespace toricq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

MomentData make_moment_data(const FieldMatrix& pi, const std::vector<FieldScalar>& offsets) {
    MomentData m;
    m.n = static_cast<int>(pi.rows());
    m.d = static_cast<int>(pi.cols());
    if (static_cast<int>(offsets.size()) != m.d) throw PreconditionError("offsets do not match the normals");
    if (exact_rank(pi) != m.n) throw ValidationError("normals do not span");
    m.pi_exact = pi;
    m.kernel_exact = nullspace(pi);
    m.pi = shadow(pi);
    m.kernel = shadow(m.kernel_exact);
    m.lambda.resize(m.d);
    for (int j = 0; j < m.d; ++j) m.lambda(j) = to_double(offsets[j]);
    m.alpha = -kTwoPi * m.kernel.transpose();
    m.lambda_term = m.kernel.transpose() * m.lambda;
    return m;
}

MomentData make_moment_data(const Polytope& p, const FaceLattice& lat) {
    MomentData m = make_moment_data(p.normal_matrix(), p.offsets());
    std::vector<IndexSet> supports;
    for (const auto& f : lat.faces()) supports.push_back(f.index_set);
    m.closed_supports = std::move(supports);
    return m;
}

Eigen::VectorXd upsilon(const MomentData& m, const ComplexVector& z) {
    if (z.size() != m.d) throw PreconditionError("point has the wrong number of coordinates");
    return z.cwiseAbs2() + m.lambda;
}

Eigen::VectorXd psi(const MomentData& m, const ComplexVector& z) { return m.kernel.transpose() * upsilon(m, z); }

ReducedObjective::ReducedObjective(const MomentData& m, const ComplexVector& z) : m_(&m), z_(z), mod2_(z.cwiseAbs2()) {
    if (z.size() != m.d) throw PreconditionError("point has the wrong number of coordinates");
    const IndexSet zeros = support_zeros(z);
    const Eigen::Index k = m.kernel_exact.cols();
    // W: kernel vectors supported on the zero set of z
    FieldMatrix off(m.d - static_cast<Eigen::Index>(zeros.size()), k);
    for (Eigen::Index j = 0, r = 0; j < m.d; ++j)
        if (!std::binary_search(zeros.begin(), zeros.end(), static_cast<int>(j))) off.row(r++) = m.kernel_exact.row(j);
    FieldMatrix w = exact_product(m.kernel_exact, nullspace(off));
    FieldMatrix coeffs = w.cols() == 0 ? FieldMatrix(FieldMatrix::Identity(k, k))
                                       : nullspace(exact_product(FieldMatrix(w.transpose()), m.kernel_exact));
    FieldMatrix reduced = exact_product(m.kernel_exact, coeffs);
    if (reduced.cols() == 0) {
        basis_ = Eigen::MatrixXd(m.d, 0);
        return;
    }
    Eigen::MatrixXd rf = shadow(reduced);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(rf);
    basis_ = qr.householderQ() * Eigen::MatrixXd::Identity(m.d, rf.cols());
}

ComplexVector ReducedObjective::point(const Eigen::VectorXd& c) const {
    Eigen::VectorXd y = basis_ * c;
    ComplexVector x(z_.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = std::exp(-kTwoPi * y(j)) * z_(j);
    return x;
}

double ReducedObjective::value(const Eigen::VectorXd& c) const {
    Eigen::VectorXd y = basis_ * c;
    double s = 0.0;
    for (Eigen::Index j = 0; j < y.size(); ++j)
        if (mod2_(j) != 0.0) s += mod2_(j) * std::exp(-2.0 * kTwoPi * y(j));
    return s / (2.0 * kTwoPi) - m_->lambda.dot(y);
}

Eigen::VectorXd ReducedObjective::gradient(const Eigen::VectorXd& c) const {
    Eigen::VectorXd u = point(c).cwiseAbs2() + m_->lambda;
    return -basis_.transpose() * u;
}

Eigen::MatrixXd ReducedObjective::hessian(const Eigen::VectorXd& c) const {
    Eigen::VectorXd w = 2.0 * kTwoPi * point(c).cwiseAbs2();
    return basis_.transpose() * w.asDiagonal() * basis_;
}

Eigen::VectorXd ReducedObjective::log_scale_start() const {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index j = 0; j < mod2_.size(); ++j)
        if (mod2_(j) != 0.0) rows.push_back(j);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), basis_.cols());
    Eigen::VectorXd b(a.rows());
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        a.row(k) = 2.0 * kTwoPi * basis_.row(rows[k]);
        b(k) = std::log(mod2_(rows[k]));
    }
    return a.colPivHouseholderQr().solve(b);
}

RetractionResult retract(const MomentData& m, const ComplexVector& z, const SolverConfig& cfg,
                         const std::optional<Eigen::VectorXd>& start) {
    if (cfg.tolerance <= 0 || cfg.max_iterations < 1) throw PreconditionError("invalid solver configuration");
    if (z.size() != m.d) throw PreconditionError("point has the wrong number of coordinates");
    if (m.closed_supports) {
        const IndexSet zeros = support_zeros(z);
        bool closed = false;
        for (const auto& s : *m.closed_supports)
            if (s == zeros) closed = true;
        if (!closed) throw PreconditionError("orbit of the point is not closed; retract its closed representative");
    }
    ReducedObjective f(m, z);
    Eigen::VectorXd c = start ? *start : Eigen::VectorXd::Zero(f.dim());
    if (c.size() != f.dim()) throw PreconditionError("starting point has the wrong dimension");
    if (!start && f.dim() > 0 && psi(m, z).norm() > cfg.tolerance) {
        // Badly scaled inputs (moduli spread over many orders of magnitude)
        // ruin the Newton system at Y = 0; a log-scale fit that brings every
        // nonzero |x_j| near 1 is a better start when F agrees.
        Eigen::VectorXd warm = f.log_scale_start();
        if (f.value(warm) < f.value(c)) c = warm;
    }

    RetractionResult out;
    for (int it = 0;; ++it) {
        ComplexVector x = f.point(c);
        double res = psi(m, x).norm();
        if (res <= cfg.tolerance) {
            out.x = x;
            out.c_star = c;
            out.y_star = f.basis() * c;
            out.residual = res;
            out.iterations = it;
            out.xi = polytope_point_of(m, x, std::max(cfg.tolerance, res));
            return out;
        }
        if (it >= cfg.max_iterations || f.dim() == 0)
            throw SolverError("retraction did not converge", res, it);
        Eigen::VectorXd g = f.gradient(c);
        Eigen::VectorXd step = f.hessian(c).ldlt().solve(-g);
        if (!step.allFinite() || g.dot(step) >= 0) step = -g;
        const double f0 = f.value(c);
        const double slope = g.dot(step);
        // Armijo backtracking; the slack absorbs roundoff in F near the minimum
        const double slack = 1e-13 * std::max(1.0, std::abs(f0));
        auto acceptable = [&](const Eigen::VectorXd& v, double t) {
            const double fv = f.value(v);
            return std::isfinite(fv) && fv <= f0 + cfg.armijo * t * slope + slack;
        };
        double t = 1.0;
        Eigen::VectorXd next = c + step;
        while (!acceptable(next, t) && t > 1e-12) {
            t *= cfg.line_search_shrink;
            next = c + t * step;
        }
        if (!acceptable(next, t)) {
            // no decrease visible in F at machine precision; fall back on the gradient norm
            Eigen::VectorXd full = c + step;
            if (f.gradient(full).norm() < g.norm()) next = full;
            else throw SolverError("line search stalled", res, it + 1);
        }
        c = next;
        if (!c.allFinite() || c.norm() > cfg.iterate_bound)
            throw SolverError("retraction iterates left every bounded set", res, it + 1);
    }
}

Eigen::VectorXd polytope_point_of(const MomentData& m, const ComplexVector& x, double tol) {
    const double res = psi(m, x).norm();
    if (!(res <= tol)) throw PreconditionError("point is not on the zero level of the moment map");
    Eigen::VectorXd u = upsilon(m, x);
    Eigen::MatrixXd normal = m.pi * m.pi.transpose();
    return normal.ldlt().solve(m.pi * u);
}

}  // namespace toricq
