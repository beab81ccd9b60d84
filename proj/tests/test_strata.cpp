#include <doctest.h>

#include <regex>

#include "support/instances.hpp"
#include "toricq/combinatorics.hpp"
#include "toricq/linalg.hpp"
#include "toricq/strata.hpp"

using namespace toricq;
using namespace fixtures;

namespace {

// Positions of `sub` inside the sorted set `full`.
IndexSet positions(const IndexSet& full, const IndexSet& sub) {
    IndexSet out;
    for (int j : sub) out.push_back(static_cast<int>(std::lower_bound(full.begin(), full.end(), j) - full.begin()));
    return out;
}

// Faces strictly above F, read off vertex sets.
std::vector<const Face*> faces_above(const FaceLattice& lat, const Face& f) {
    std::vector<const Face*> out;
    for (const auto& g : lat.faces())
        if (g.id != f.id && std::includes(g.vertices.begin(), g.vertices.end(), f.vertices.begin(), f.vertices.end()))
            out.push_back(&g);
    return out;
}

int count_nested_levels(const StratificationReport& r) {
    int deepest = 0;
    for (const auto& s : r.strata)
        if (s.link) deepest = std::max(deepest, 1 + count_nested_levels(*s.link->report));
    return deepest;
}

}  // namespace

TEST_CASE("simple polytopes have only the maximal piece") {
    for (const Polytope& p : {interval(), triangle(), weighted_triangle(), hirzebruch(), cube()}) {
        auto r = build_stratification(p);
        REQUIRE(r.strata.size() == 1);
        CHECK(r.strata[0].maximal);
        CHECK(r.strata[0].complex_dim == p.dim());
        CHECK(r.poset_edges.empty());
        CHECK(r.polytope_depth == 0);
    }
}

TEST_CASE("square pyramid stratification") {
    Polytope p = square_pyramid();
    FaceLattice lat(p);
    auto r = build_stratification(p, lat);
    REQUIRE(r.strata.size() == 2);
    const auto& apex = r.strata[1];
    CHECK(apex.index_set == IndexSet{0, 1, 2, 3});
    CHECK(apex.complex_dim == 0);
    CHECK(apex.depth == 1);
    CHECK(r.polytope_depth == 1);
    CHECK(r.poset_edges == std::vector<std::pair<int, int>>{{1, 0}});
    CHECK(apex.chart == IndexSet{0, 1, 2});
    CHECK(apex.chart_base.empty());
    REQUIRE(apex.chart_group);
    CHECK(apex.chart_group->finite);

    REQUIRE(apex.link);
    const LinkData& link = *apex.link;
    CHECK(link.link_polytope->dim() == 2);
    CHECK(link.link_polytope->facet_count() == 4);
    CHECK(link.link_polytope->vertices().size() == 4);
    CHECK(link.cone_group_dim == 1);
    CHECK(link.link_group_dim == 2);
    CHECK(link.kernel_split);
    CHECK(link.report->strata.size() == 1);
    CHECK(link.link_real_dim == 5);
    CHECK(link.stated_link_real_dim == 7);
    CHECK(link.dimension_discrepancy());

    CHECK_THROWS_AS(build_link(p, lat, lat.interior()), PreconditionError);
    CHECK_THROWS_AS(build_link(p, lat, *lat.find({4})), PreconditionError);
}

TEST_CASE("link data satisfies its exact identities") {
    for (const Polytope& p : {square_pyramid(), octahedron(), nonrational_pyramid(), pyramid_over(square_pyramid()),
                              pyramid_over(octahedron())}) {
        FaceLattice lat(p);
        const int n = p.dim();
        for (int id : lat.singular_faces()) {
            const Face& f = lat.face(id);
            LinkData link = build_link(p, lat, id);
            const int m = n - f.dim;
            CHECK(link.span_basis.cols() == m);
            CHECK(link.cone_group_dim == f.r() - n + f.dim);
            CHECK(link.link_group_dim == link.cone_group_dim + 1);
            CHECK(link.kernel_split);
            CHECK(link.link_polytope->dim() == m - 1);

            // cone normals reproduce X_j and lie in the sub-quasilattice
            for (std::size_t k = 0; k < f.index_set.size(); ++k) {
                CHECK(exact_product(link.span_basis, link.cone_normals[k]) == p.normal(f.index_set[k]));
                CHECK(link.span_quasilattice.contains(link.cone_normals[k]));
            }
            CHECK(link.slice_point.dot(link.slice_normal) == link.slice_level);
            CHECK(all_zero(exact_product(FieldMatrix(link.slice_normal.transpose()), link.slice_basis)));

            // faces of the link <-> faces strictly above F
            FaceLattice link_lat(*link.link_polytope);
            auto above = faces_above(lat, f);
            CHECK(link_lat.faces().size() == above.size());
            for (const Face* g : above) {
                auto h = link_lat.find(positions(f.index_set, g->index_set));
                REQUIRE(h);
                CHECK(link_lat.face(*h).dim == g->dim - f.dim - 1);
                CHECK(link_lat.face(*h).regular == g->regular);
            }
            // link vertices sit on the slice, on the cone facets they claim
            for (std::size_t v = 0; v < link.link_polytope->vertices().size(); ++v) {
                FieldVector nu = link.slice_point + exact_product(link.slice_basis, link.link_polytope->vertices()[v]);
                CHECK(nu.dot(link.slice_normal) == link.slice_level);
                for (int k : link.link_polytope->vertex_active_sets()[v])
                    CHECK(nu.dot(link.cone_normals[static_cast<std::size_t>(k)]) == link.cone_offsets[static_cast<std::size_t>(k)]);
            }
            CHECK(link.report->polytope_depth <= lat.polytope_depth());
        }
    }
}

TEST_CASE("octahedron vertices have quadrilateral links") {
    Polytope p = octahedron();
    auto r = build_stratification(p);
    CHECK(r.strata.size() == 7);
    for (std::size_t k = 1; k < r.strata.size(); ++k) {
        CHECK(r.strata[k].complex_dim == 0);
        CHECK(r.strata[k].link->link_polytope->facet_count() == 4);
        CHECK(r.strata[k].link->link_polytope->vertices().size() == 4);
    }
}

TEST_CASE("recursion on deeper polytopes") {
    auto r = build_stratification(pyramid_over(octahedron()));
    CHECK(r.polytope_depth == 2);
    CHECK(count_nested_levels(r) == 2);

    auto q = build_stratification(pyramid_over(square_pyramid()));
    CHECK(count_nested_levels(q) == 2);
    bool positive_dim = false;
    for (const auto& s : q.strata)
        if (!s.maximal && s.complex_dim > 0) positive_dim = true;
    CHECK(positive_dim);
}

TEST_CASE("poset respects the face order and has a unique top") {
    for (const Polytope& p : {square_pyramid(), octahedron(), pyramid_over(square_pyramid()), pyramid_over(octahedron())}) {
        FaceLattice lat(p);
        auto r = build_stratification(p, lat);
        std::vector<bool> has_up(r.strata.size(), false);
        for (const auto& [a, b] : r.poset_edges) {
            CHECK_FALSE(r.strata[a].maximal);
            has_up[a] = true;
            if (!r.strata[b].maximal) {
                CHECK(lat.leq(r.strata[a].face, r.strata[b].face));
                CHECK(r.strata[a].complex_dim < r.strata[b].complex_dim);
            }
        }
        for (std::size_t k = 1; k < r.strata.size(); ++k) CHECK(has_up[k]);
        CHECK_FALSE(has_up[0]);
        CHECK(r.strata.size() == lat.singular_faces().size() + 1);
    }
}

TEST_CASE("chart coordinates and local models") {
    Polytope p = pyramid_over(square_pyramid());
    FaceLattice lat(p);
    auto r = build_stratification(p, lat);
    for (const auto& s : r.strata) {
        if (s.maximal) continue;
        FieldMatrix basis(p.dim(), p.dim());
        for (int i = 0; i < p.dim(); ++i) basis.col(i) = p.normal(s.chart[static_cast<std::size_t>(i)]);
        CHECK(exact_product(basis, s.chart_coordinates) == p.normal_matrix());
        CHECK(static_cast<int>(set_intersection_of(s.chart, s.index_set).size()) == p.dim() - s.complex_dim);

        LocalModel lm = local_model(p, r, s.face);
        CHECK(lm.base_dim == s.complex_dim);
        CHECK(lm.cone_complex_dim == p.dim() - s.complex_dim);
        CHECK(lm.base_group.coordinates == lm.base_coordinates);
        // b_k vanishes on the chart's own facets
        for (int i : s.chart) CHECK(is_zero(lm.chart_offsets[static_cast<std::size_t>(i)]));
    }
    CHECK_THROWS_AS(local_model(p, r, lat.interior()), PreconditionError);

    Polytope pyr = square_pyramid();
    FaceLattice plat(pyr);
    auto pr = build_stratification(pyr, plat);
    LocalModel apex = local_model(pyr, pr, *plat.find({0, 1, 2, 3}));
    CHECK(apex.base_dim == 0);
    CHECK(apex.base_group.finite);
}

TEST_CASE("derived moment data of a link") {
    Polytope p = square_pyramid();
    FaceLattice lat(p);
    LinkData link = build_link(p, lat, *lat.find({0, 1, 2, 3}));
    MomentData cone = derived_moment_data(LinkMomentKind::cone, link);
    MomentData slice = derived_moment_data(LinkMomentKind::link_polytope, link);
    CHECK(cone.d == 4);
    CHECK(cone.kernel_dim() == 1);
    CHECK(slice.kernel_dim() == 2);
    CHECK(cone.lambda.isZero());

    // offsets pair to -1 with s and vanish on the cone kernel
    CHECK(slice.lambda.sum() == doctest::Approx(-1.0));
    Eigen::VectorXd on_cone = cone.kernel.transpose() * slice.lambda;
    CHECK(on_cone.norm() < 1e-12);

    // a point with sum |z_j|^2 = 1 in the cone zero level lies in the link zero level
    ComplexVector z = ComplexVector::Constant(4, std::complex<double>(0.5, 0.0));
    CHECK(psi(cone, z).norm() < 1e-12);
    CHECK(psi(slice, z).norm() < 1e-12);
}

TEST_CASE("DOT export") {
    auto pyr = to_dot(build_stratification(square_pyramid()));
    CHECK(std::regex_search(pyr, std::regex("s0 \\[label=\"maximal dim 3\"\\]")));
    CHECK(std::regex_search(pyr, std::regex("s1 \\[label=\"F\\{1,2,3,4\\} dim 0\"\\]")));
    CHECK(std::regex_search(pyr, std::regex("s1 -> s0;")));
    auto simple = to_dot(build_stratification(cube()));
    CHECK(simple.find("->") == std::string::npos);
    CHECK(simple.find("s0") != std::string::npos);
    CHECK(simple.find("s1") == std::string::npos);
}
