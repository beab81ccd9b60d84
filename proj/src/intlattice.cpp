#include "toricq/intlattice.hpp"

#include <algorithm>

namespace toricq {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Integer> IntMatrix::row(int i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
            data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_};
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::top_rows(int count) const {
    IntMatrix t(count, cols_);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < cols_; ++j) t(i, j) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InternalError("integer matrix product: shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
        }
    return out;
}

void IntMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::add_row_multiple(int target, int source, const Integer& factor) {
    if (factor == 0) return;
    for (int j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

namespace {

// Replaces rows (r, i) by the unimodular combination that puts gcd in row r
// and zero in row i at column c.
void gcd_combine(IntMatrix& m, IntMatrix& u, int r, int i, int c) {
    Integer g, s, t;
    const Integer a = m(r, c);
    const Integer b = m(i, c);
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g;
    const Integer bg = b / g;
    auto mix = [&](IntMatrix& x) {
        for (int j = 0; j < x.cols(); ++j) {
            const Integer xr = x(r, j);
            const Integer xi = x(i, j);
            x(r, j) = s * xr + t * xi;
            x(i, j) = -bg * xr + ag * xi;
        }
    };
    mix(m);
    mix(u);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

RowHermite row_hermite(const IntMatrix& a) {
    IntMatrix m = a;
    IntMatrix u = IntMatrix::identity(a.rows());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        for (int i = r + 1; i < m.rows(); ++i)
            if (m(i, c) != 0) gcd_combine(m, u, r, i, c);
        if (m(r, c) == 0) continue;
        if (m(r, c) < 0) {
            for (int j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
            for (int j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
        }
        for (int k = 0; k < r; ++k) {
            const Integer q = floor_div(m(k, c), m(r, c));
            if (q == 0) continue;
            m.add_row_multiple(k, r, -q);
            u.add_row_multiple(k, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(u), std::move(pivots)};
}

IntMatrix integer_kernel(const IntMatrix& a) {
    const RowHermite h = row_hermite(a.transposed());
    const int n = a.cols();
    IntMatrix basis(n - h.rank(), n);
    for (int k = h.rank(); k < n; ++k)
        for (int j = 0; j < n; ++j) basis(k - h.rank(), j) = h.transform(k, j);
    return basis;
}

std::vector<Integer> smith_invariants(const IntMatrix& a) {
    IntMatrix m = a;
    const int rows = m.rows();
    const int cols = m.cols();
    std::vector<Integer> diag;
    auto swap_cols = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < rows; ++i) std::swap(m(i, x), m(i, y));
    };
    for (int t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // move the smallest nonzero entry of the trailing block to (t, t)
            int bi = -1, bj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (m(i, j) != 0 && (bi < 0 || abs(m(i, j)) < abs(m(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) return diag;
            m.swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Integer q = m(i, t) / m(t, t);
                m.add_row_multiple(i, t, -q);
                if (m(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Integer q = m(t, j) / m(t, t);
                for (int i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            m.add_row_multiple(t, bad, Integer(1));
        }
        diag.push_back(abs(m(t, t)));
    }
    return diag;
}

Integer int_determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw InternalError("determinant of a non-square integer matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    int sign = 1;
    Integer prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = v / prev;  // exact by Sylvester's identity
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::optional<std::vector<Integer>> row_lattice_solve(const RowHermite& h, const std::vector<Integer>& v) {
    std::vector<Integer> rem = v;
    std::vector<Integer> x(h.rank());
    for (int k = 0; k < h.rank(); ++k) {
        const int c = h.pivots[k];
        const Integer& p = h.form(k, c);
        if (rem[c] % p != 0) return std::nullopt;
        x[k] = rem[c] / p;
        for (int j = c; j < h.form.cols(); ++j) rem[j] -= x[k] * h.form(k, j);
    }
    for (const auto& e : rem)
        if (e != 0) return std::nullopt;
    std::vector<Integer> coeffs(h.transform.cols());
    for (int k = 0; k < h.rank(); ++k)
        for (int j = 0; j < h.transform.cols(); ++j) coeffs[j] += x[k] * h.transform(k, j);
    return coeffs;
}

std::pair<IntMatrix, Integer> clear_denominators(const std::vector<std::vector<Rational>>& rows) {
    Integer den = 1;
    for (const auto& r : rows)
        for (const auto& q : r) den = lcm(den, Integer(q.get_den()));
    const int cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < cols; ++j) {
            const Rational& q = rows[i][j];
            m(i, j) = q.get_num() * (den / q.get_den());
        }
    return {std::move(m), den};
}

std::vector<Rational> expand_coefficients(const FieldVector& v, int degree) {
    std::vector<Rational> out(static_cast<std::size_t>(v.size()) * degree);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const auto& c = v(i).coefficients();
        for (int k = 0; k < degree && k < static_cast<int>(c.size()); ++k) out[i * degree + k] = c[k];
    }
    return out;
}

}  // namespace toricq
