#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "toricq/intlattice.hpp"

using namespace toricq;
using namespace oracles;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("hermite form is unimodular and echelon") {
    IntMatrix a = from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto h = row_hermite(a);
    CHECK(h.transform * a == h.form);
    CHECK(abs(int_determinant(h.transform)) == 1);
    CHECK(h.rank() == 3);
}

TEST_CASE("smith invariants match determinantal divisors") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> e(-6, 6);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int t = 0; t < 60; ++t) {
        IntMatrix m(dim(rng), dim(rng));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = e(rng);
        CHECK(smith_invariants(m) == determinantal_invariants(m));
    }
    CHECK(smith_invariants(from_rows({{1, 0}, {-1, -2}})) == std::vector<Integer>{1, 2});
}

TEST_CASE("determinant against cofactor expansion") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> e(-5, 5);
    for (int t = 0; t < 40; ++t) {
        int n = 1 + t % 5;
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = e(rng);
        CHECK(int_determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("integer kernel and row lattice membership") {
    IntMatrix a = from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}});
    IntMatrix k = integer_kernel(a);
    CHECK(k.rows() == 2);
    CHECK(a * k.transposed() == IntMatrix(2, 2));

    auto h = row_hermite(from_rows({{2, 0}, {0, 2}}));
    CHECK(row_lattice_solve(h, {4, -2}).has_value());
    CHECK_FALSE(row_lattice_solve(h, {1, 0}).has_value());
    auto c = row_lattice_solve(row_hermite(from_rows({{3, 1}, {1, 1}})), {5, 3});
    REQUIRE(c.has_value());
    CHECK((*c)[0] * 3 + (*c)[1] * 1 == 5);
    CHECK((*c)[0] * 1 + (*c)[1] * 1 == 3);
}

TEST_CASE("clearing denominators") {
    auto [m, den] = clear_denominators({{Rational(1, 2), Rational(1, 3)}});
    CHECK(den == 6);
    CHECK(m(0, 0) == 3);
    CHECK(m(0, 1) == 2);
}
