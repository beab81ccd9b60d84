#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "toricq/quasilattice.hpp"
#include "toricq/scalars.hpp"

namespace toricq {

using IndexSet = std::vector<int>;  // sorted, 0-based facet indices
using ComplexVector = Eigen::VectorXcd;

/// Convex polytope {mu : <mu, X_j> >= lambda_j, j = 0..d-1} together with the
/// chosen normals and a quasilattice containing them.
class Polytope {
public:
    /// Validates the instance and computes its vertices. Throws
    /// ValidationError for empty, unbounded, lower-dimensional or redundant
    /// input, or normals outside the quasilattice.
    Polytope(FieldPtr field, std::vector<FieldVector> normals, std::vector<FieldScalar> offsets,
             Quasilattice quasilattice);

    int dim() const { return n_; }
    int facet_count() const { return d_; }
    const FieldPtr& field() const { return field_; }
    const FieldVector& normal(int j) const { return normals_[j]; }
    const std::vector<FieldVector>& normals() const { return normals_; }
    const FieldScalar& offset(int j) const { return offsets_[j]; }
    const std::vector<FieldScalar>& offsets() const { return offsets_; }
    /// n x d matrix whose column j is X_j.
    const FieldMatrix& normal_matrix() const { return pi_; }
    const Quasilattice& quasilattice() const { return quasilattice_; }

    const std::vector<FieldVector>& vertices() const { return vertices_; }
    /// Facets active at each vertex.
    const std::vector<IndexSet>& vertex_active_sets() const { return active_; }

    /// <mu, X_j> - lambda_j
    FieldScalar slack(const FieldVector& mu, int j) const;
    bool contains(const FieldVector& mu) const;

private:
    FieldPtr field_;
    int n_ = 0;
    int d_ = 0;
    std::vector<FieldVector> normals_;
    std::vector<FieldScalar> offsets_;
    FieldMatrix pi_;
    Quasilattice quasilattice_;
    std::vector<FieldVector> vertices_;
    std::vector<IndexSet> active_;
};

struct Face {
    int id = 0;
    IndexSet index_set;        // facets containing the face
    std::vector<int> vertices; // indices into Polytope::vertices()
    int dim = 0;
    bool regular = true;
    int depth = 0;

    int r() const { return static_cast<int>(index_set.size()); }
};

/// All faces of a polytope including the interior (empty index set),
/// ordered by dimension and then by index set.
class FaceLattice {
public:
    explicit FaceLattice(const Polytope& p);

    int ambient_dim() const { return n_; }
    int facet_count() const { return d_; }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int id) const { return faces_[id]; }
    int interior() const { return interior_; }
    std::vector<int> faces_of_dim(int p) const;
    std::vector<int> singular_faces() const;
    int polytope_depth() const { return depth_; }

    /// F <= G when F lies in the closure of G.
    bool leq(int f, int g) const;
    /// Cover relations (lower, upper) of the containment order.
    const std::vector<std::pair<int, int>>& hasse_edges() const { return hasse_; }

    std::optional<int> find(const IndexSet& index_set) const;

    /// Face cut out by the equalities in `active`, or nullopt when no point
    /// of the polytope satisfies them all.
    std::optional<int> face_of_active_set(const IndexSet& active) const;

    /// Face F with z in C^F x (C*)^{F^c}, or nullopt when z lies outside
    /// the admissible open set. Only exact zeros count as vanishing.
    std::optional<int> cd_delta_membership(const ComplexVector& z) const;

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<IndexSet> vertex_active_;
    std::vector<Face> faces_;
    std::vector<std::pair<int, int>> hasse_;
    int interior_ = 0;
    int depth_ = 0;
};

IndexSet support_zeros(const ComplexVector& z);
bool is_subset(const IndexSet& a, const IndexSet& b);
std::string format_index_set(const IndexSet& s);  // 1-based, e.g. "{1,3}"

}  // namespace toricq
