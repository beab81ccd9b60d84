#pragma once

// Integer matrices and the normal forms used for lattice questions:
// row Hermite form with unimodular transform, integer kernels, Smith
// invariant factors and row-lattice membership.

#include <optional>
#include <vector>

#include "toricq/scalars.hpp"

namespace toricq {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Integer& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Integer& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<Integer> row(int i) const;
    IntMatrix transposed() const;
    IntMatrix top_rows(int count) const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;

    void swap_rows(int a, int b);
    // row(target) += factor * row(source)
    void add_row_multiple(int target, int source, const Integer& factor);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Integer> data_;
};

struct RowHermite {
    IntMatrix form;       // upper echelon, positive pivots, reduced above pivots
    IntMatrix transform;  // unimodular, transform * input = form
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

RowHermite row_hermite(const IntMatrix& a);

/// Rows form a basis of {v in Z^cols : a v = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Diagonal of the Smith normal form, nonzero entries only, including 1s.
std::vector<Integer> smith_invariants(const IntMatrix& a);

/// Exact determinant of a square integer matrix (fraction-free elimination).
Integer int_determinant(const IntMatrix& a);

/// Integer coefficients c (one per generator row of the original matrix)
/// with c * original = v, or nullopt when v is outside the row lattice.
std::optional<std::vector<Integer>> row_lattice_solve(const RowHermite& h, const std::vector<Integer>& v);

/// Scales rational rows by the least common denominator. Returns the
/// integer matrix and the denominator used.
std::pair<IntMatrix, Integer> clear_denominators(const std::vector<std::vector<Rational>>& rows);

/// Coefficient expansion of a field vector: entry i contributes `degree`
/// consecutive rational coordinates. `degree` must be at least the degree of
/// every scalar involved.
std::vector<Rational> expand_coefficients(const FieldVector& v, int degree);

}  // namespace toricq
