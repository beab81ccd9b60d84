#pragma once

#include <optional>
#include <vector>

#include "toricq/intlattice.hpp"
#include "toricq/scalars.hpp"

namespace toricq {

/// Finitely generated additive subgroup of the ambient space, spanning it
/// over the reals. Integer questions are answered on the rational
/// coefficient expansion of the generators, which is injective.
class Quasilattice {
public:
    Quasilattice() = default;
    /// Throws ValidationError when the generators do not span.
    Quasilattice(FieldPtr field, int ambient_dim, std::vector<FieldVector> generators);

    static Quasilattice standard(int n, FieldPtr field = nullptr);

    int ambient_dim() const { return n_; }
    const FieldPtr& field() const { return field_; }
    const std::vector<FieldVector>& generators() const { return generators_; }

    /// Rank as a free abelian group.
    int z_rank() const { return hermite_.rank(); }
    bool is_lattice() const { return z_rank() == n_; }
    /// Nonzero rows of the Hermite form of the cleared coefficient matrix.
    IntMatrix basis_certificate() const { return hermite_.form.top_rows(hermite_.rank()); }
    const Integer& denominator() const { return denominator_; }

    bool contains(const FieldVector& v) const;
    /// Integer coefficients with respect to the generators, when v is a member.
    std::optional<std::vector<Integer>> coordinates(const FieldVector& v) const;

    /// Generators of the subgroup lying in {v : rows(annihilators) v = 0}.
    std::vector<FieldVector> intersect_subspace(const FieldMatrix& annihilators) const;

    int expansion_degree() const { return field_ ? field_->degree() : 1; }

private:
    FieldPtr field_;
    int n_ = 0;
    std::vector<FieldVector> generators_;
    Integer denominator_ = 1;
    RowHermite hermite_;
};

}  // namespace toricq
