#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "toricq/lattice_groups.hpp"
#include "toricq/polytope.hpp"

namespace toricq {

/// Float data of the moment maps Upsilon(z)_j = |z_j|^2 + lambda_j and
/// Psi = iota* o Upsilon for a system pi: R^d -> R^n with offsets lambda.
struct MomentData {
    int n = 0;
    int d = 0;
    FieldMatrix pi_exact;             // n x d
    FieldMatrix kernel_exact;         // d x k
    Eigen::MatrixXd pi;               // n x d
    Eigen::MatrixXd kernel;           // d x k, row j = iota*(e_j*)
    Eigen::VectorXd lambda;           // d
    Eigen::MatrixXd alpha;            // k x d, column j = -2 pi iota*(e_j*)
    Eigen::VectorXd lambda_term;      // iota*(sum lambda_k e_k*)
    /// Supports of closed orbits (face index sets), when known.
    std::optional<std::vector<IndexSet>> closed_supports;

    int kernel_dim() const { return static_cast<int>(kernel.cols()); }
};

MomentData make_moment_data(const FieldMatrix& pi, const std::vector<FieldScalar>& offsets);
MomentData make_moment_data(const Polytope& p, const FaceLattice& lat);

struct SolverConfig {
    double tolerance = 1e-9;
    int max_iterations = 200;
    double line_search_shrink = 0.5;
    double armijo = 1e-4;
    int precision_bits = 53;
    double iterate_bound = 1e6;  // |c| beyond this is treated as divergence
};

struct RetractionResult {
    ComplexVector x;
    Eigen::VectorXd y_star;   // minimizer as a d-vector in the reduced subspace
    Eigen::VectorXd c_star;   // coordinates of y_star in the orthonormal basis
    double residual = 0.0;
    int iterations = 0;
    Eigen::VectorXd xi;
};

Eigen::VectorXd upsilon(const MomentData& m, const ComplexVector& z);
Eigen::VectorXd psi(const MomentData& m, const ComplexVector& z);

/// F(c) = (1/4 pi) sum_{k notin I_z} |z_k|^2 exp(-4 pi (Rc)_k) - lambda . (Rc)
/// over an orthonormal basis R of the complement of (n cap R^{I_z}) in n.
/// Its gradient is -R^T Upsilon(x(c)), so critical points lie on the zero level.
class ReducedObjective {
public:
    ReducedObjective(const MomentData& m, const ComplexVector& z);

    int dim() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }

    double value(const Eigen::VectorXd& c) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& c) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& c) const;
    /// x_j = exp(-2 pi Y_j) z_j with Y = R c
    ComplexVector point(const Eigen::VectorXd& c) const;
    /// Least-squares c making log|x_j|^2 as close to 0 as the subspace allows.
    Eigen::VectorXd log_scale_start() const;

private:
    const MomentData* m_;
    ComplexVector z_;
    Eigen::VectorXd mod2_;
    Eigen::MatrixXd basis_;
};

/// Unique point of the closure of the A-orbit of z on the zero level of Psi.
/// Throws PreconditionError for a nonclosed orbit (when supports are known)
/// and SolverError when Newton does not converge.
RetractionResult retract(const MomentData& m, const ComplexVector& z, const SolverConfig& cfg = {},
                         const std::optional<Eigen::VectorXd>& start = std::nullopt);

/// Solves pi*(xi) = Upsilon(x) by normal equations. Requires |Psi(x)| <= tol.
Eigen::VectorXd polytope_point_of(const MomentData& m, const ComplexVector& x, double tol = 1e-9);

}  // namespace toricq
