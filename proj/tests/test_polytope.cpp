#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "support/instances.hpp"
#include "toricq/combinatorics.hpp"
#include "toricq/polytope.hpp"

using namespace toricq;
using namespace fixtures;

namespace {

struct OracleFace {
    std::set<int> vertices;
    IndexSet index_set;
};

// Every subset S of facets whose common vertices are nonempty gives a face;
// its index set is the set of facets active at all of those vertices.
std::vector<OracleFace> brute_force_faces(const Polytope& p) {
    std::map<std::set<int>, IndexSet> found;
    const int d = p.facet_count();
    for (int mask = 0; mask < (1 << d); ++mask) {
        std::set<int> vs;
        for (std::size_t k = 0; k < p.vertices().size(); ++k) {
            bool ok = true;
            for (int j = 0; j < d; ++j)
                if ((mask >> j & 1) && !is_zero(p.slack(p.vertices()[k], j))) ok = false;
            if (ok) vs.insert(static_cast<int>(k));
        }
        if (vs.empty()) continue;
        IndexSet common;
        for (int j = 0; j < d; ++j) {
            bool all = true;
            for (int k : vs)
                if (!is_zero(p.slack(p.vertices()[k], j))) all = false;
            if (all) common.push_back(j);
        }
        found[vs] = common;
    }
    std::vector<OracleFace> out;
    for (auto& [vs, is] : found) out.push_back({vs, is});
    return out;
}

// Minimum length of a saturated chain of singular faces ending at a regular one.
int brute_force_depth(const FaceLattice& lat, int f) {
    std::function<int(int)> go = [&](int g) -> int {
        if (lat.face(g).regular) return 0;
        int best = 1 << 20;
        for (auto [lo, hi] : lat.hasse_edges())
            if (lo == g) best = std::min(best, 1 + go(hi));
        return best;
    };
    return go(f);
}

std::vector<int> f_vector(const FaceLattice& lat) {
    std::vector<int> out(lat.ambient_dim() + 1);
    for (const auto& f : lat.faces()) ++out[f.dim];
    return out;
}

std::vector<Polytope> sample_polytopes() {
    return {interval(), unit_square(), triangle(), weighted_triangle(), hirzebruch(), cube(), square_pyramid(),
            octahedron(), pyramid_over(square_pyramid()), pyramid_over(octahedron()), nonrational_pyramid()};
}

}  // namespace

TEST_CASE("face enumeration matches the brute-force oracle") {
    for (const auto& p : sample_polytopes()) {
        FaceLattice lat(p);
        auto oracle = brute_force_faces(p);
        REQUIRE(oracle.size() == lat.faces().size());
        for (const auto& o : oracle) {
            auto id = lat.find(o.index_set);
            REQUIRE(id.has_value());
            CHECK(std::set<int>(lat.face(*id).vertices.begin(), lat.face(*id).vertices.end()) == o.vertices);
        }
    }
}

TEST_CASE("square and triangle") {
    FaceLattice sq(unit_square());
    CHECK(f_vector(sq) == std::vector<int>{4, 4, 1});
    CHECK(sq.singular_faces().empty());
    FaceLattice tri(triangle());
    CHECK(f_vector(tri) == std::vector<int>{3, 3, 1});
    CHECK(tri.singular_faces().empty());
    CHECK(tri.polytope_depth() == 0);
}

TEST_CASE("square pyramid apex is singular") {
    Polytope p = square_pyramid();
    FaceLattice lat(p);
    CHECK(f_vector(lat) == std::vector<int>{5, 8, 5, 1});
    auto apex = lat.find({0, 1, 2, 3});
    REQUIRE(apex.has_value());
    CHECK(lat.face(*apex).dim == 0);
    CHECK(lat.face(*apex).r() == 4);
    CHECK_FALSE(lat.face(*apex).regular);
    CHECK(lat.singular_faces() == std::vector<int>{*apex});
    for (int v : lat.faces_of_dim(0))
        if (v != *apex) CHECK(lat.face(v).regular);
    CHECK(lat.face(*apex).depth == 1);
    CHECK(lat.polytope_depth() == 1);
}

TEST_CASE("active-set closure") {
    FaceLattice lat(square_pyramid());
    CHECK(lat.face_of_active_set({}) == lat.interior());
    CHECK(lat.face_of_active_set({0, 1, 2}) == lat.find({0, 1, 2, 3}));
    CHECK_FALSE(lat.face_of_active_set({0, 1, 2, 3, 4}).has_value());
}

TEST_CASE("membership in the admissible open set") {
    FaceLattice lat(square_pyramid());
    ComplexVector z = ComplexVector::Ones(5);
    CHECK(lat.cd_delta_membership(z) == lat.interior());
    z << 0, 0, 0, 0, 1;
    CHECK(lat.cd_delta_membership(z) == lat.find({0, 1, 2, 3}));
    z.setZero();
    CHECK_FALSE(lat.cd_delta_membership(z).has_value());
}

TEST_CASE("singularity depth against saturated chain search") {
    for (const auto& p : sample_polytopes()) {
        FaceLattice lat(p);
        int maxd = 0;
        for (const auto& f : lat.faces()) {
            CHECK(f.depth == brute_force_depth(lat, f.id));
            maxd = std::max(maxd, f.depth);
        }
        CHECK(lat.polytope_depth() == maxd);
    }
    CHECK(FaceLattice(cube()).polytope_depth() == 0);
    // apex of the 4-pyramid has a regular edge down to a base vertex of the square pyramid
    CHECK(FaceLattice(pyramid_over(square_pyramid())).polytope_depth() == 1);
    CHECK(FaceLattice(pyramid_over(octahedron())).polytope_depth() == 2);
}

TEST_CASE("face lattice properties") {
    for (const auto& p : sample_polytopes()) {
        FaceLattice lat(p);
        const int n = p.dim();
        int facets = 0;
        int maximal = 0;
        for (const auto& f : lat.faces()) {
            CHECK(f.r() >= n - f.dim);
            CHECK(f.regular == (f.r() == n - f.dim));
            CHECK((f.depth == 0) == f.regular);
            if (!f.regular) CHECK(f.dim < n - 2);
            if (f.r() == 1) ++facets;
            CHECK(lat.face_of_active_set(f.index_set) == f.id);
            bool is_max = true;
            for (const auto& g : lat.faces()) {
                CHECK(lat.leq(f.id, g.id) == is_subset(g.index_set, f.index_set));
                if (g.id != f.id && lat.leq(f.id, g.id)) is_max = false;
            }
            if (is_max) ++maximal;
        }
        CHECK(facets == p.facet_count());
        CHECK(maximal == 1);
        CHECK(lat.face(lat.interior()).dim == n);
    }
}

TEST_CASE("validation rejects degenerate input") {
    CHECK_THROWS_AS(rational_polytope({{1}, {-1}}, {0, 1}), ValidationError);                         // empty
    CHECK_THROWS_AS(rational_polytope({{1, 0}, {0, 1}, {1, 1}}, {0, 0, 0}), ValidationError);          // unbounded
    CHECK_THROWS_AS(rational_polytope({{1, 0}, {0, 1}, {-1, -1}, {-1, -1}}, {0, 0, -1, -2}), ValidationError);  // redundant
    CHECK_THROWS_AS(rational_polytope({{1, 0}, {-1, 0}, {0, 1}, {-1, -1}}, {0, 0, 0, -1}), ValidationError);   // flat
    FieldVector h(2);
    h << FieldScalar(Rational(1, 2)), FieldScalar(0);
    CHECK_THROWS_AS(Polytope(nullptr, {h, fixtures::vec({0, 1}), fixtures::vec({-1, -1})},
                             {FieldScalar(0), FieldScalar(0), FieldScalar(-1)}, Quasilattice::standard(2)),
                    ValidationError);  // normal outside Z^2
}
