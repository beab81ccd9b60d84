#pragma once

#include <optional>
#include <random>
#include <vector>

#include "toricq/polytope.hpp"
#include "toricq/quasilattice.hpp"

namespace toricq {

/// The exact sequence 0 -> n -> R^d -> d -> 0 (e_j -> X_j) and its dual.
struct SequenceData {
    FieldMatrix pi;         // n x d
    FieldMatrix kernel;     // d x (d-n); columns span the kernel of pi
    FieldMatrix iota_star;  // (d-n) x d, the transpose of `kernel`
    FieldMatrix pi_star;    // d x n, the transpose of `pi`

    int ambient_dim() const { return static_cast<int>(pi.rows()); }
    int facet_count() const { return static_cast<int>(pi.cols()); }
    int kernel_dim() const { return static_cast<int>(kernel.cols()); }
};

/// Throws ValidationError when the normals do not span.
SequenceData kernel_data(const Polytope& p);

/// All n-subsets I contained in the active set of some vertex with
/// {X_j : j in I} a basis, in lexicographic order.
std::vector<IndexSet> chart_index_sets(const Polytope& p);

struct GroupPresentation {
    IndexSet chart;                 // I
    IndexSet coordinates;           // coordinates the images live on
    std::vector<FieldVector> generators_mod_z;  // d-vectors, zero off `coordinates`, entries in [0,1)
    bool finite = true;
    std::optional<Integer> order;   // set when finite
    std::vector<Integer> invariant_factors;  // nontrivial factors, each dividing the next
};

/// Gamma_I = N cap T^I, presented by the images of the quasilattice
/// generators in R^I / Z^I. Throws PreconditionError when I is not a chart.
GroupPresentation gamma_group(const Polytope& p, const IndexSet& chart);

/// Quotient of Gamma_I acting on the chart of the stratum of F: the
/// generator images restricted to I \ I_F. Requires |I cap I_F| = n - dim F.
GroupPresentation gamma_check(const Polytope& p, const IndexSet& chart, const Face& face);

/// Order of (L + Z^m) / Z^m for the lattice L generated by rational vectors.
/// Returns the order and the nontrivial invariant factors.
std::pair<Integer, std::vector<Integer>> finite_quotient_structure(const std::vector<std::vector<Rational>>& generators,
                                                                    int m);

/// exp(2 pi i theta) lies in N, i.e. pi(theta) lies in Q.
bool n_membership(const SequenceData& seq, const Quasilattice& q, const FieldVector& theta);

/// Sampled element exp(2 pi i (theta + i Y)) of N_C: theta has pi(theta) in
/// Q and is field-exact; Y lies in the kernel span.
struct NCElement {
    FieldVector theta;
    Eigen::VectorXd y;
};

/// Draws theta from a random integer combination of quasilattice
/// generators (pulled back through a fixed chart) plus a small rational
/// kernel vector, and Y from kernel coefficients uniform in [-range, range].
class NCSampler {
public:
    NCSampler(const Polytope& p, const SequenceData& seq);
    NCElement operator()(std::mt19937_64& rng, double kernel_range = 2.0, bool with_real_part = true) const;

private:
    int d_;
    IndexSet chart_;
    std::vector<FieldVector> pulled_back_;  // chart coordinates of each generator, as d-vectors
    FieldMatrix kernel_;
    Eigen::MatrixXd kernel_float_;
};

/// (g.w)_j = exp(2 pi i theta_j) exp(-2 pi Y_j) w_j
ComplexVector act(const NCElement& g, const ComplexVector& w);

/// Float copy of the kernel basis; row j is iota*(e_j*).
Eigen::MatrixXd kernel_shadow(const SequenceData& seq);

}  // namespace toricq
