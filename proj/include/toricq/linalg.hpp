#pragma once

// Exact dense linear algebra over any Eigen scalar with exact arithmetic
// (FieldScalar in practice). Pivoting picks the first nonzero entry; there is
// no notion of magnitude.

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace toricq {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct RowEchelon {
    DenseMatrix<Scalar> reduced;        // reduced row echelon form
    std::vector<Eigen::Index> pivots;   // pivot column of each nonzero row
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> m = a;
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = row;
        while (p < m.rows() && is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row) m.row(p).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            const Scalar f = m(i, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& a) {
    return static_cast<Eigen::Index>(row_echelon(a).pivots.size());
}

/// Basis of the right nullspace, one column per free variable. The basis
/// vector for free column f has a 1 in position f and zeros in the other
/// free positions.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const auto ech = row_echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<Eigen::Index> free;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    DenseMatrix<Scalar> basis = DenseMatrix<Scalar>::Zero(a.cols(), static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = Scalar(1);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r)
            basis(ech.pivots[r], k) = -ech.reduced(static_cast<Eigen::Index>(r), free[k]);
    }
    return basis;
}

/// Some solution of a x = b, or nullopt when inconsistent. Free variables
/// are set to zero.
template <typename DerivedA, typename DerivedB>
std::optional<DenseVector<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                            const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    DenseMatrix<Scalar> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    const auto ech = row_echelon(aug);
    if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
    DenseVector<Scalar> x = DenseVector<Scalar>::Zero(a.cols());
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
        x(ech.pivots[r]) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
    return x;
}

/// Inverse of a square matrix, or nullopt when singular.
template <typename Derived>
std::optional<DenseMatrix<typename Derived::Scalar>> exact_inverse(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = a.rows();
    DenseMatrix<Scalar> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = DenseMatrix<Scalar>::Identity(n, n);
    const auto ech = row_echelon(aug);
    if (static_cast<Eigen::Index>(ech.pivots.size()) < n || (n > 0 && ech.pivots[n - 1] != n - 1))
        return std::nullopt;
    return DenseMatrix<Scalar>(ech.reduced.rightCols(n));
}

template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> m = a;
    Scalar det(1);
    const Eigen::Index n = m.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && is_zero(m(p, c))) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            m.row(p).swap(m.row(c));
            det = -det;
        }
        det *= m(c, c);
        const Scalar inv = Scalar(1) / m(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            const Scalar f = m(i, c) * inv;
            for (Eigen::Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Columns of `a` indexed by `cols`, in the given order.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> select_columns(const Eigen::MatrixBase<Derived>& a,
                                                     const std::vector<int>& cols) {
    DenseMatrix<typename Derived::Scalar> out(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = a.col(cols[k]);
    return out;
}

template <typename Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!is_zero(a(i, j))) return false;
    return true;
}

/// Exact matrix product; avoids Eigen's blocked kernels, which assume
/// trivially copyable scalars for best performance.
template <typename DA, typename DB>
DenseMatrix<typename DA::Scalar> exact_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    using Scalar = typename DA::Scalar;
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (is_zero(a(i, k))) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

}  // namespace toricq
