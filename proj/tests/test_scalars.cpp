#include <doctest.h>

#include <cmath>
#include <random>

#include "toricq/linalg.hpp"
#include "toricq/scalars.hpp"

using namespace toricq;

namespace {

FieldPtr sqrt2() { return NumberField::make({-2, 0, 1}, 1, 2); }
FieldPtr golden() { return NumberField::make({-1, -1, 1}, 1, 2); }

FieldScalar random_element(std::mt19937& rng, const FieldPtr& f) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::vector<Rational> c;
    for (int k = 0; k < f->degree(); ++k) c.emplace_back(num(rng), den(rng));
    return FieldScalar(f, c);
}

}  // namespace

TEST_CASE("sign of simple elements") {
    auto f = sqrt2();
    CHECK(sign(FieldScalar()) == 0);
    CHECK(sign(FieldScalar(f, {-1, 1})) == 1);
    CHECK(sign(FieldScalar(f, {1, -1})) == -1);
    // 140/99 < sqrt2 < 99/70
    CHECK(sign(FieldScalar(f, {Rational(-140, 99), 1})) == 1);
    CHECK(sign(FieldScalar(f, {Rational(-99, 70), 1})) == -1);
}

TEST_CASE("sign agrees with a long double oracle") {
    auto f = golden();
    const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        FieldScalar s = random_element(rng, f);
        long double v = s.coefficients()[0].get_d() + s.coefficients()[1].get_d() * phi;
        if (std::fabs(v) < 1e-12L) continue;
        CHECK(sign(s) == (v > 0 ? 1 : -1));
    }
}

TEST_CASE("float shadow") {
    auto s = float_shadow(FieldScalar(Rational(3, 2)));
    CHECK(s.value == 1.5);
    CHECK(s.error == 0.0);
    auto z = float_shadow(FieldScalar());
    CHECK(z.value == 0.0);
    CHECK(z.error == 0.0);
    auto r = float_shadow(FieldScalar::generator(sqrt2()));
    CHECK(std::fabs(static_cast<long double>(r.value) - std::sqrt(2.0L)) <= r.error + 1e-19L);
    CHECK(r.error <= 1.5 * std::ldexp(1.0, -53) * 2);
    CHECK_THROWS_AS(float_shadow(FieldScalar(1), 16), PreconditionError);
}

TEST_CASE("field axioms and sign multiplicativity on samples") {
    std::mt19937 rng(11);
    for (auto f : {sqrt2(), golden(), NumberField::make({-2, 0, 0, 1}, 1, 2)}) {
        for (int i = 0; i < 60; ++i) {
            FieldScalar a = random_element(rng, f), b = random_element(rng, f), c = random_element(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(sign(a * b) == sign(a) * sign(b));
            if (!is_zero(a)) CHECK(a * a.inverse() == FieldScalar(1));
        }
    }
}

TEST_CASE("shadow error shrinks with precision") {
    std::mt19937 rng(3);
    auto f = NumberField::make({-2, 0, 0, 1}, 1, 2);
    for (int i = 0; i < 20; ++i) {
        FieldScalar a = random_element(rng, f);
        double prev = INFINITY;
        for (int bits : {24, 32, 40, 53}) {
            auto sh = float_shadow(a, bits);
            CHECK(sh.error <= prev);
            prev = sh.error;
        }
    }
}

TEST_CASE("invalid field declarations") {
    CHECK_THROWS_AS(NumberField::make({-4, 0, 1}, 1, 3), FieldError);    // x^2-4 has rational roots
    CHECK_THROWS_AS(NumberField::make({-2, 0, 1}, -2, 2), FieldError);   // two roots inside
    CHECK_THROWS_AS(NumberField::make({1, 0, 2, 0, 1}, 0, 1), FieldError);  // (x^2+1)^2 not squarefree
    CHECK_NOTHROW(NumberField::make({-1, 1}, 0, 2));
}

TEST_CASE("degree one field is plain rational arithmetic") {
    auto q = NumberField::rationals();
    FieldScalar a(q, {Rational(2, 3)});
    FieldScalar b(Rational(1, 3));
    CHECK(a + b == FieldScalar(1));
    CHECK(sign(a - b) == 1);
    CHECK(floor(FieldScalar(Rational(-1, 2))) == -1);
}

TEST_CASE("exact linear algebra over the field") {
    auto f = sqrt2();
    FieldScalar r = FieldScalar::generator(f);
    FieldMatrix m(2, 2);
    m << FieldScalar(1), r, r, FieldScalar(2);
    CHECK(exact_rank(m) == 1);
    FieldMatrix k = nullspace(m);
    REQUIRE(k.cols() == 1);
    CHECK(all_zero(exact_product(m, k)));
    CHECK(is_zero(exact_determinant(m)));
    m(1, 1) = FieldScalar(3);
    auto inv = exact_inverse(m);
    REQUIRE(inv.has_value());
    CHECK(exact_product(m, *inv) == FieldMatrix::Identity(2, 2));
}
