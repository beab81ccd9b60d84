#include "toricq/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "toricq/combinatorics.hpp"
#include "toricq/linalg.hpp"

namespace toricq {

namespace {

FieldMatrix columns_of(const std::vector<FieldVector>& vs, const std::vector<int>& which, int n) {
    FieldMatrix m(n, static_cast<Eigen::Index>(which.size()));
    for (std::size_t k = 0; k < which.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vs[which[k]];
    return m;
}

int affine_rank(const std::vector<FieldVector>& points, const std::vector<int>& which, int n) {
    if (which.empty()) return -1;
    FieldMatrix diffs(n, static_cast<Eigen::Index>(which.size()) - 1);
    for (std::size_t k = 1; k < which.size(); ++k)
        diffs.col(static_cast<Eigen::Index>(k) - 1) = points[which[k]] - points[which[0]];
    return static_cast<int>(exact_rank(diffs));
}

FieldScalar dot(const FieldVector& a, const FieldVector& b) {
    FieldScalar s;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!is_zero(a(i)) && !is_zero(b(i))) s += a(i) * b(i);
    return s;
}

}  // namespace

Polytope::Polytope(FieldPtr field, std::vector<FieldVector> normals, std::vector<FieldScalar> offsets,
                   Quasilattice quasilattice)
    : field_(std::move(field)),
      normals_(std::move(normals)),
      offsets_(std::move(offsets)),
      quasilattice_(std::move(quasilattice)) {
    d_ = static_cast<int>(normals_.size());
    if (d_ == 0) throw ValidationError("polytope has no facets");
    n_ = static_cast<int>(normals_.front().size());
    if (n_ < 1) throw ValidationError("ambient dimension must be positive");
    if (static_cast<int>(offsets_.size()) != d_) throw ValidationError("normals and offsets differ in length");
    if (d_ < n_ + 1) throw ValidationError("a bounded full-dimensional polytope needs at least n+1 facets");
    pi_ = FieldMatrix(n_, d_);
    for (int j = 0; j < d_; ++j) {
        if (normals_[j].size() != n_) throw ValidationError("normal " + std::to_string(j + 1) + " has the wrong dimension");
        if (all_zero(normals_[j])) throw ValidationError("normal " + std::to_string(j + 1) + " is zero");
        for (Eigen::Index i = 0; i < n_; ++i) common_field(field_, normals_[j](i).field());
        common_field(field_, offsets_[j].field());
        pi_.col(j) = normals_[j];
    }
    if (exact_rank(pi_) != n_) throw ValidationError("normals do not span the ambient space (polytope unbounded)");

    // Recession cone {v : <v, X_j> >= 0} must be trivial. Its extreme rays are
    // cut out by n-1 independent normals.
    for_each_subset(d_, n_ - 1, [&](const std::vector<int>& s) {
        FieldMatrix a = columns_of(normals_, s, n_).transpose();
        if (a.rows() == 0) a = FieldMatrix(0, n_);
        if (exact_rank(a) != n_ - 1) return;
        FieldVector ray = nullspace(a).col(0);
        for (int sgn : {1, -1}) {
            bool feasible = true;
            for (int j = 0; j < d_ && feasible; ++j)
                if (sign(dot(ray, normals_[j])) * sgn < 0) feasible = false;
            if (feasible) throw ValidationError("polytope is unbounded");
        }
    });

    for_each_subset(d_, n_, [&](const std::vector<int>& s) {
        FieldMatrix a = columns_of(normals_, s, n_).transpose();
        FieldVector rhs(n_);
        for (int k = 0; k < n_; ++k) rhs(k) = offsets_[s[k]];
        auto inv = exact_inverse(a);
        if (!inv) return;
        FieldVector v = exact_product(*inv, rhs);
        for (int j = 0; j < d_; ++j)
            if (sign(slack(v, j)) < 0) return;
        for (const auto& w : vertices_)
            if (w == v) return;
        vertices_.push_back(v);
    });
    if (vertices_.empty()) throw ValidationError("polytope is empty");

    for (const auto& v : vertices_) {
        IndexSet act;
        for (int j = 0; j < d_; ++j)
            if (is_zero(slack(v, j))) act.push_back(j);
        active_.push_back(act);
    }
    std::vector<int> all(vertices_.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    if (affine_rank(vertices_, all, n_) != n_) throw ValidationError("polytope has empty interior");

    for (int j = 0; j < d_; ++j) {
        std::vector<int> on;
        for (std::size_t k = 0; k < vertices_.size(); ++k)
            if (std::binary_search(active_[k].begin(), active_[k].end(), j)) on.push_back(static_cast<int>(k));
        bool facet = affine_rank(vertices_, on, n_) == n_ - 1;
        if (facet) {
            IndexSet common = active_[on.front()];
            for (int k : on) common = set_intersection_of(common, active_[k]);
            facet = common == IndexSet{j};
        }
        if (!facet) throw ValidationError("half-space " + std::to_string(j + 1) + " is redundant");
    }

    if (quasilattice_.ambient_dim() != n_) throw ValidationError("quasilattice dimension differs from the polytope");
    for (int j = 0; j < d_; ++j)
        if (!quasilattice_.contains(normals_[j]))
            throw ValidationError("normal " + std::to_string(j + 1) + " is not in the quasilattice");
}

FieldScalar Polytope::slack(const FieldVector& mu, int j) const { return dot(mu, normals_[j]) - offsets_[j]; }

bool Polytope::contains(const FieldVector& mu) const {
    for (int j = 0; j < d_; ++j)
        if (sign(slack(mu, j)) < 0) return false;
    return true;
}

// ---------------------------------------------------------------- FaceLattice

FaceLattice::FaceLattice(const Polytope& p) : n_(p.dim()), d_(p.facet_count()), vertex_active_(p.vertex_active_sets()) {
    const int nv = static_cast<int>(vertex_active_.size());
    std::vector<std::vector<int>> facet_vertices(d_);
    for (int k = 0; k < nv; ++k)
        for (int j : vertex_active_[k]) facet_vertices[j].push_back(k);

    std::vector<int> all(nv);
    for (int k = 0; k < nv; ++k) all[k] = k;
    std::set<std::vector<int>> seen{all};
    std::vector<std::vector<int>> queue{all};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (int j = 0; j < d_; ++j) {
            auto cut = set_intersection_of(queue[q], facet_vertices[j]);
            if (cut.empty() || cut == queue[q]) continue;
            if (seen.insert(cut).second) queue.push_back(cut);
        }
    }

    for (const auto& vs : queue) {
        Face f;
        f.vertices = vs;
        if (vs.size() == static_cast<std::size_t>(nv)) {
            f.index_set = {};
        } else {
            f.index_set = vertex_active_[vs.front()];
            for (int k : vs) f.index_set = set_intersection_of(f.index_set, vertex_active_[k]);
        }
        FieldMatrix span(n_, static_cast<Eigen::Index>(f.index_set.size()));
        for (std::size_t k = 0; k < f.index_set.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = p.normal(f.index_set[k]);
        f.dim = n_ - static_cast<int>(exact_rank(span));
        if (affine_rank(p.vertices(), vs, n_) != f.dim)
            throw InternalError("face dimension disagrees with its vertex span");
        f.regular = f.r() == n_ - f.dim;
        faces_.push_back(std::move(f));
    }
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.index_set < b.index_set;
    });
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        faces_[i].id = static_cast<int>(i);
        if (faces_[i].index_set.empty()) interior_ = static_cast<int>(i);
    }

    for (const auto& f : faces_)
        for (const auto& g : faces_)
            if (g.dim == f.dim + 1 && leq(f.id, g.id)) hasse_.emplace_back(f.id, g.id);

    // depth(F) = 0 when regular, else 1 + min over the faces covering F
    for (auto it = faces_.rbegin(); it != faces_.rend(); ++it) {
        if (it->regular) {
            it->depth = 0;
            continue;
        }
        int best = -1;
        for (const auto& g : faces_)
            if (g.dim == it->dim + 1 && leq(it->id, g.id) && (best < 0 || g.depth < best)) best = g.depth;
        it->depth = best + 1;
    }
    depth_ = 0;
    for (const auto& f : faces_) depth_ = std::max(depth_, f.depth);
}

std::vector<int> FaceLattice::faces_of_dim(int p) const {
    std::vector<int> out;
    for (const auto& f : faces_)
        if (f.dim == p) out.push_back(f.id);
    return out;
}

std::vector<int> FaceLattice::singular_faces() const {
    std::vector<int> out;
    for (const auto& f : faces_)
        if (!f.regular) out.push_back(f.id);
    return out;
}

bool FaceLattice::leq(int f, int g) const {
    const auto& a = faces_[f].vertices;
    const auto& b = faces_[g].vertices;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::optional<int> FaceLattice::find(const IndexSet& index_set) const {
    for (const auto& f : faces_)
        if (f.index_set == index_set) return f.id;
    return std::nullopt;
}

std::optional<int> FaceLattice::face_of_active_set(const IndexSet& active) const {
    std::vector<int> vs;
    for (std::size_t k = 0; k < vertex_active_.size(); ++k)
        if (is_subset(active, vertex_active_[k])) vs.push_back(static_cast<int>(k));
    if (vs.empty()) return std::nullopt;
    for (const auto& f : faces_)
        if (f.vertices == vs) return f.id;
    throw InternalError("active-set closure is not a face");
}

std::optional<int> FaceLattice::cd_delta_membership(const ComplexVector& z) const {
    if (z.size() != d_) throw PreconditionError("point has the wrong number of coordinates");
    return face_of_active_set(support_zeros(z));
}

IndexSet support_zeros(const ComplexVector& z) {
    IndexSet out;
    for (Eigen::Index j = 0; j < z.size(); ++j)
        if (z(j) == std::complex<double>(0.0, 0.0)) out.push_back(static_cast<int>(j));
    return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::string format_index_set(const IndexSet& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t k = 0; k < s.size(); ++k) out << (k ? "," : "") << s[k] + 1;
    out << "}";
    return out.str();
}

}  // namespace toricq
