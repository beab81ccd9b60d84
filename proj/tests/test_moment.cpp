#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "support/instances.hpp"
#include "support/points.hpp"
#include "toricq/moment.hpp"

using namespace toricq;
using namespace fixtures;

namespace {

std::vector<Polytope> instances() {
    return {interval(), unit_square(), weighted_triangle(), hirzebruch(), square_pyramid(), octahedron(),
            nonrational_pyramid()};
}

}  // namespace

TEST_CASE("upsilon and psi on the interval") {
    Polytope p = interval();
    auto m = make_moment_data(p, FaceLattice(p));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((upsilon(m, cvec({0, 0})) - Eigen::Vector2d(0, -1)).norm() < 1e-15);
    CHECK((upsilon(m, cvec({1, 1})) - Eigen::Vector2d(1, 0)).norm() < 1e-15);
    CHECK((upsilon(m, cvec({r, r})) - Eigen::Vector2d(0.5, -0.5)).norm() < 1e-15);
    CHECK(std::abs(psi(m, cvec({r, r}))(0)) < 1e-15);
    CHECK(psi(m, cvec({1, 1}))(0) == doctest::Approx(1.0));
    CHECK(psi(m, cvec({0, 0}))(0) == doctest::Approx(-1.0));
}

TEST_CASE("retraction on the interval") {
    Polytope p = interval();
    auto m = make_moment_data(p, FaceLattice(p));
    auto res = retract(m, cvec({1, 1}));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(res.x(0) - r) < 1e-8);
    CHECK(std::abs(res.x(1) - r) < 1e-8);
    CHECK(std::abs(res.xi(0) - 0.5) < 1e-8);
    CHECK(res.residual <= 1e-9);
    // scalar oracle: 2 exp(-4 pi t) = 1 with Y = t (1,1)
    const double t = std::log(2.0) / (4 * std::numbers::pi);
    CHECK(std::abs(res.y_star(0) - t) < 1e-8);

    auto on = retract(m, cvec({r, r}));
    CHECK(on.iterations == 0);

    auto vert = retract(m, cvec({1, 0}));
    CHECK(std::abs(std::abs(vert.x(0)) - 1.0) < 1e-8);
    CHECK(vert.x(1) == std::complex<double>(0, 0));
    CHECK(std::abs(vert.xi(0) - 1.0) < 1e-8);
}

TEST_CASE("retraction rejects nonclosed orbits") {
    Polytope p = square_pyramid();
    auto m = make_moment_data(p, FaceLattice(p));
    CHECK_THROWS_AS(retract(m, cvec({0, 0, 0, 1, 1})), PreconditionError);
    CHECK_NOTHROW(retract(m, cvec({0, 0, 0, 0, 1})));
}

TEST_CASE("nonconvergence is reported") {
    Polytope p = interval();
    auto m = make_moment_data(p, FaceLattice(p));
    SolverConfig cfg;
    cfg.max_iterations = 1;
    try {
        retract(m, cvec({1e6, 1e-6}), cfg);
        FAIL("expected a solver error");
    } catch (const SolverError& e) {
        CHECK(e.iterations == 1);
        CHECK(e.residual > cfg.tolerance);
        CHECK(e.code() == "solver_nonconvergence");
    }
}

TEST_CASE("polytope point of zero-level points") {
    Polytope p = interval();
    auto m = make_moment_data(p, FaceLattice(p));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(polytope_point_of(m, cvec({r, r}))(0) == doctest::Approx(0.5));
    CHECK(polytope_point_of(m, cvec({0, 1}))(0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(polytope_point_of(m, cvec({1, 1})), PreconditionError);
}

TEST_CASE("gradient and Hessian of the reduced objective") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> nd(0.0, 0.3);
    for (const auto& p : instances()) {
        FaceLattice lat(p);
        auto m = make_moment_data(p, lat);
        for (const auto& face : lat.faces()) {
            ReducedObjective f(m, random_point_on(lat, face.id, rng));
            if (f.dim() == 0) continue;
            for (int s = 0; s < 3; ++s) {
                Eigen::VectorXd c(f.dim());
                for (int i = 0; i < c.size(); ++i) c(i) = nd(rng);
                Eigen::VectorXd g = f.gradient(c);
                Eigen::VectorXd fd(c.size());
                const double h = 1e-6;
                for (int i = 0; i < c.size(); ++i) {
                    Eigen::VectorXd e = Eigen::VectorXd::Unit(c.size(), i) * h;
                    fd(i) = (f.value(c + e) - f.value(c - e)) / (2 * h);
                }
                CHECK((g - fd).norm() <= 1e-5 * std::max(1.0, g.norm()));
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.hessian(c));
                CHECK(es.eigenvalues().minCoeff() > 0);
            }
        }
    }
}

TEST_CASE("retraction is unique, A-invariant and lands in the polytope") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> nd(0.0, 0.5);
    for (const auto& p : instances()) {
        FaceLattice lat(p);
        auto m = make_moment_data(p, lat);
        auto seq = kernel_data(p);
        NCSampler sample(p, seq);
        for (const auto& face : lat.faces()) {
            ComplexVector z = random_point_on(lat, face.id, rng);
            auto base = retract(m, z);
            CHECK(support_zeros(base.x) == face.index_set);
            for (int j = 0; j < p.facet_count(); ++j)
                CHECK(base.xi.dot(shadow(p.normal(j)).col(0)) >= to_double(p.offset(j)) - 1e-8);
            ReducedObjective f(m, z);
            for (int s = 0; s < 3; ++s) {
                Eigen::VectorXd c0(f.dim());
                for (int i = 0; i < c0.size(); ++i) c0(i) = nd(rng);
                auto other = retract(m, z, {}, c0);
                CHECK((other.x - base.x).norm() < 1e-8);
            }
            // pure A-translates: no phase change, so x itself must agree
            for (int s = 0; s < 3; ++s) {
                NCElement g = sample(rng, 1.0);
                g.theta = FieldVector::Zero(p.facet_count());
                auto moved = retract(m, act(g, z));
                CHECK((moved.x - base.x).norm() < 1e-8);
            }
        }
    }
}

TEST_CASE("zero level meets every face stratum") {
    for (const auto& p : instances()) {
        FaceLattice lat(p);
        auto m = make_moment_data(p, lat);
        for (const auto& face : lat.faces()) {
            FieldVector xi = relint_point(p, face);
            ComplexVector x(p.facet_count());
            for (int j = 0; j < p.facet_count(); ++j) x(j) = std::sqrt(std::max(0.0, to_double(p.slack(xi, j))));
            CHECK(support_zeros(x) == face.index_set);
            CHECK(psi(m, x).norm() < 1e-12);
            CHECK((polytope_point_of(m, x) - shadow(xi)).norm() < 1e-10);
            CHECK(retract(m, x).iterations == 0);
        }
    }
}
