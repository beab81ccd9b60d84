#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/instances.hpp"
#include "toricq/io.hpp"
#include "toricq/verify.hpp"

using namespace toricq;
using namespace fixtures;

namespace {

ProblemInstance instance_of(const Polytope& p, std::uint64_t seed = 7) {
    ProblemInstance inst;
    inst.field = p.field();
    inst.polytope.emplace(p);
    inst.seed = seed;
    return inst;
}

bool same_polytope(const Polytope& a, const Polytope& b) {
    if (a.dim() != b.dim() || a.facet_count() != b.facet_count()) return false;
    for (int j = 0; j < a.facet_count(); ++j) {
        if (a.offset(j) != b.offset(j)) return false;
        for (int i = 0; i < a.dim(); ++i)
            if (a.normal(j)(i) != b.normal(j)(i)) return false;
    }
    return a.quasilattice().z_rank() == b.quasilattice().z_rank();
}

const char* kPyramidText = R"({
  "n": 3,
  "normals": [[-1,0,-1],[1,0,-1],[0,-1,-1],[0,1,-1],[0,0,1]],
  "offsets": [-1,-1,-1,-1,0]
})";

}  // namespace

TEST_CASE("instances survive a JSON round trip") {
    for (const Polytope& p : {interval(), weighted_triangle(), square_pyramid(), nonrational_interval(),
                              nonrational_pyramid()}) {
        ProblemInstance inst = instance_of(p);
        inst.solver.tolerance = 1e-11;
        const std::string text = instance_to_json(inst).dump();
        ProblemInstance back = parse_instance_text(text);
        CHECK(same_polytope(*back.polytope, p));
        CHECK(back.seed == inst.seed);
        CHECK(back.solver.tolerance == inst.solver.tolerance);
        CHECK(instance_to_json(back).dump() == text);
    }
}

TEST_CASE("scalars accept plain numbers and strings") {
    ProblemInstance inst = parse_instance_text(kPyramidText);
    CHECK(same_polytope(*inst.polytope, square_pyramid()));
    auto f = sqrt2_field();
    CHECK(parse_scalar(Json::parse(R"(["1/2", "3"])"), f) == FieldScalar(f, {Rational(1, 2), 3}));
    CHECK(parse_scalar(Json::parse(R"("-4/6")"), nullptr) == FieldScalar(Rational(-2, 3)));
    CHECK(scalar_to_json(FieldScalar(f, {5, 0}), f).dump() == R"(["5","0"])");
}

TEST_CASE("malformed documents are schema errors") {
    auto code_of = [](const std::string& text) {
        try {
            parse_instance_text(text);
        } catch (const Error& e) {
            return e.code();
        }
        return std::string("none");
    };
    CHECK(code_of("{") == "schema");
    CHECK(code_of("[]") == "schema");
    CHECK(code_of(R"({"n": 1, "offsets": [0, -1]})") == "schema");
    CHECK(code_of(R"({"n": 1, "normals": [["a"]], "offsets": [0]})") == "schema");
    CHECK(code_of(R"({"n": 1, "normals": [[1], [-1]], "offsets": [[0, 1], -1]})") == "schema");
    CHECK(code_of(R"({"field": {"minpoly": [-2, 0, 1]}, "n": 1, "normals": [[1]], "offsets": [0]})") == "schema");
}

TEST_CASE("bad fields and empty polytopes are rejected") {
    CHECK_THROWS_AS(parse_instance_text(R"({"field": {"minpoly": [-4, 0, 1], "root_interval": ["1", "3"]},
        "n": 1, "normals": [[1], [-1]], "offsets": [0, -1]})"),
                    FieldError);
    // offsets of [0,1] swapped in sign: 0 <= x <= -1 is empty
    CHECK_THROWS_AS(parse_instance_text(R"({"n": 1, "normals": [[1], [-1]], "offsets": [0, 1]})"), ValidationError);
}

TEST_CASE("points parse from pairs and bare reals") {
    ComplexVector z = parse_point(Json::parse("[[1, 2], 3, [0, -1]]"));
    REQUIRE(z.size() == 3);
    CHECK(z(0) == std::complex<double>(1, 2));
    CHECK(z(1) == std::complex<double>(3, 0));
    CHECK(z(2) == std::complex<double>(0, -1));
    CHECK(point_to_json(z).dump() == "[[1.0,2.0],[3.0,0.0],[0.0,-1.0]]");
    CHECK_THROWS_AS(parse_point(Json::parse(R"([[1, 2, 3]])")), ValidationError);
}

TEST_CASE("analyze summaries of small examples") {
    Json pyr = analyze_to_json(ToricModel(square_pyramid()));
    CHECK(pyr["singular_faces"] == 1);
    CHECK(pyr["depth"] == 1);
    CHECK(pyr["is_lattice"] == true);

    Json tri = analyze_to_json(ToricModel(triangle()));
    CHECK(tri["singular_faces"] == 0);
    for (const auto& g : tri["gamma"]) CHECK(g["order"] == "1");

    Json nr = analyze_to_json(ToricModel(nonrational_interval()));
    CHECK(nr["quasilattice_rank"] == 2);
    CHECK(nr["is_lattice"] == false);
    bool infinite_seen = false;
    for (const auto& g : nr["gamma"]) infinite_seen |= g["order"] == "infinite";
    CHECK(infinite_seen);
}

TEST_CASE("gamma of the weighted triangle") {
    Json table = gamma_table_to_json(weighted_triangle());
    int nontrivial = 0;
    for (const auto& g : table) {
        if (g["order"] == "1") continue;
        ++nontrivial;
        CHECK(g["order"] == "2");
        CHECK(g["invariant_factors"] == Json::parse(R"(["2"])"));
    }
    CHECK(nontrivial == 1);
}

TEST_CASE("DOT output for the pyramid strata") {
    Polytope p = square_pyramid();
    std::string dot = to_dot(build_stratification(p));
    std::size_t nodes = 0, edges = 0;
    std::istringstream in(dot);
    for (std::string line; std::getline(in, line);) {
        if (line.find("->") != std::string::npos) ++edges;
        else if (line.find("[label=") != std::string::npos) ++nodes;
    }
    CHECK(nodes == 2);
    CHECK(edges == 1);
    CHECK(faces_to_dot(FaceLattice(p)).rfind("digraph", 0) == 0);
}

TEST_CASE("stratification report lists the apex link") {
    Polytope p = square_pyramid();
    Json r = report_to_json(build_stratification(p), p.field());
    REQUIRE(r["strata"].size() == 2);
    const Json& apex = r["strata"][1];
    CHECK(apex["face"] == Json::parse("[1,2,3,4]"));
    REQUIRE(apex.contains("link"));
    CHECK(apex["link"]["link_polytope"]["normals"].size() == 4);
}

TEST_CASE("errors serialize with their code") {
    Json j = error_to_json(SolverError("no convergence", 1e-3, 50));
    CHECK(j["error"] == "solver_nonconvergence");
    CHECK(j["message"] == "no convergence");
}

TEST_CASE("atomic writes replace the target") {
    auto dir = std::filesystem::temp_directory_path() / "toricq_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "out.json").string();
    write_atomic(path, "first");
    write_atomic(path, "second");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verification passes and is deterministic") {
    ProblemInstance inst = instance_of(square_pyramid(), 11);
    VerificationRun a = run_verification(inst, 20, 11);
    VerificationRun b = run_verification(inst, 20, 11);
    for (const auto& r : a.properties) {
        INFO(r.name << " " << (r.witnesses.empty() ? "" : r.witnesses.front()));
        CHECK(r.failures == 0);
    }
    CHECK(a.passed());
    CHECK(run_to_json(a).dump() == run_to_json(b).dump());
    std::vector<std::string> names;
    for (const auto& r : a.properties) names.push_back(r.name);
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("verification covers the toric case") {
    ProblemInstance inst = instance_of(hirzebruch(), 3);
    VerificationRun run = run_verification(inst, 15, 3);
    bool toric = false;
    for (const auto& r : run.properties) {
        INFO(r.name << " " << (r.witnesses.empty() ? "" : r.witnesses.front()));
        CHECK(r.failures == 0);
        toric |= r.name == "toric_recovery" && r.samples > 0;
    }
    CHECK(toric);
}
