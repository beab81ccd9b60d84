// Command-line front end: analyze, faces, strata, retract, equiv, gamma, verify.
//
// Exit codes: 0 success, 2 invalid input or point outside the admissible
// set, 3 solver nonconvergence, 4 property failure, 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "toricq/io.hpp"
#include "toricq/verify.hpp"

using namespace toricq;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;
constexpr int kExitProperty = 4;

struct Options {
    std::string instance;
    std::string json_out;
    std::string dot_out;
    std::string point;
    std::string points;
    std::string chart;
    double tol = 0.0;
    int samples = 200;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int precision = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("io", "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Inline JSON text or the path of a file holding it.
Json json_argument(const std::string& text) {
    const std::string body = std::filesystem::exists(text) ? read_file(text) : text;
    try {
        return Json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("schema", std::string("malformed JSON argument: ") + e.what());
    }
}

ProblemInstance load(const Options& o) {
    spdlog::debug("reading instance {}", o.instance);
    ProblemInstance inst = parse_instance_text(read_file(o.instance));
    if (o.tol > 0) inst.solver.tolerance = o.tol;
    if (o.precision > 0) inst.solver.precision_bits = o.precision;
    if (o.seed_given) inst.seed = o.seed;
    return inst;
}

void emit(const Options& o, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (o.json_out.empty()) {
        std::cout << text;
    } else {
        write_atomic(o.json_out, text);
        spdlog::info("wrote {}", o.json_out);
    }
}

void emit_dot(const Options& o, const std::string& dot) {
    if (o.dot_out.empty()) return;
    write_atomic(o.dot_out, dot);
    spdlog::info("wrote {}", o.dot_out);
}

IndexSet parse_chart(const std::string& text, int d) {
    IndexSet out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const int j = std::stoi(item);
        if (j < 1 || j > d) throw ValidationError("schema", "chart index out of range: " + item);
        out.push_back(j - 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int run(const std::string& command, const Options& o) {
    ProblemInstance inst = load(o);
    const Polytope& p = *inst.polytope;

    if (command == "analyze") {
        ToricModel model(p);
        emit(o, analyze_to_json(model));
        return 0;
    }
    if (command == "faces") {
        FaceLattice lat(p);
        emit(o, faces_to_json(lat));
        emit_dot(o, faces_to_dot(lat));
        return 0;
    }
    if (command == "strata") {
        auto report = build_stratification(p);
        emit(o, report_to_json(report, p.field()));
        emit_dot(o, to_dot(report));
        return 0;
    }
    if (command == "gamma") {
        if (o.chart.empty()) {
            emit(o, gamma_table_to_json(p));
        } else {
            emit(o, group_to_json(gamma_group(p, parse_chart(o.chart, p.facet_count())), p.field()));
        }
        return 0;
    }
    if (command == "retract") {
        if (o.point.empty()) throw ValidationError("schema", "retract needs --point");
        ToricModel model(p);
        ComplexVector z = parse_point(json_argument(o.point));
        if (z.size() != p.facet_count()) throw ValidationError("schema", "point has the wrong number of coordinates");
        emit(o, retraction_to_json(model, classify_orbit(model, z, inst.solver), inst.solver));
        return 0;
    }
    if (command == "equiv") {
        if (o.points.empty()) throw ValidationError("schema", "equiv needs --points");
        Json pts = json_argument(o.points);
        if (!pts.is_array() || pts.size() != 2) throw ValidationError("schema", "--points must hold two points");
        ToricModel model(p);
        ComplexVector z = parse_point(pts[0]);
        ComplexVector w = parse_point(pts[1]);
        if (z.size() != p.facet_count() || w.size() != p.facet_count())
            throw ValidationError("schema", "point has the wrong number of coordinates");
        emit(o, verdict_to_json(model, equivalent(model, z, w, inst.solver)));
        return 0;
    }
    if (command == "verify") {
        VerificationRun result = run_verification(inst, o.samples, inst.seed);
        emit(o, run_to_json(result));
        for (const auto& r : result.properties)
            if (r.failures) spdlog::warn("{}: {} of {} samples failed", r.name, r.failures, r.samples);
        return result.passed() ? 0 : kExitProperty;
    }
    throw InternalError("unknown command " + command);
}

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("toricq");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("TORICQ_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
    configure_logging();
    CLI::App app{"Stratification, orbit and moment-map computations for convex polytopes"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("instance", o.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--json", o.json_out, "Write the JSON result to this file instead of stdout");
        sub->add_option("--tol", o.tol, "Residual tolerance for the moment-map solver");
        sub->add_option("--precision", o.precision, "Float shadow precision in bits");
        sub->add_option("--seed", o.seed, "Seed for sampling")->each([&](const std::string&) { o.seed_given = true; });
    };

    auto* analyze = app.add_subcommand("analyze", "Faces, depth, quasilattice rank and chart groups");
    add_common(analyze);
    auto* faces = app.add_subcommand("faces", "Face lattice");
    add_common(faces);
    faces->add_option("--dot", o.dot_out, "Write the Hasse diagram as DOT");
    auto* strata = app.add_subcommand("strata", "Stratification report");
    add_common(strata);
    strata->add_option("--dot", o.dot_out, "Write the stratum poset as DOT");
    auto* retract_cmd = app.add_subcommand("retract", "Canonical zero-level representative of a point");
    add_common(retract_cmd);
    retract_cmd->add_option("--point", o.point, "Point as [[re, im], ...] (inline JSON or file)");
    auto* equiv = app.add_subcommand("equiv", "Equivalence test for two points");
    add_common(equiv);
    equiv->add_option("--points", o.points, "Two points as [[[re, im], ...], [...]] (inline JSON or file)");
    auto* gamma = app.add_subcommand("gamma", "Chart groups");
    add_common(gamma);
    gamma->add_option("--chart", o.chart, "Chart index set, 1-based and comma separated");
    auto* verify = app.add_subcommand("verify", "Run the property suites");
    add_common(verify);
    verify->add_option("--samples", o.samples, "Samples per property")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInvalid;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const SolverError& e) {
        std::cout << error_to_json(e).dump(2) << "\n";
        spdlog::error("{} (residual {}, {} iterations)", e.what(), e.residual, e.iterations);
        return kExitSolver;
    } catch (const InternalError& e) {
        std::cout << error_to_json(e).dump(2) << "\n";
        spdlog::error("{}", e.what());
        return 1;
    } catch (const Error& e) {
        std::cout << error_to_json(e).dump(2) << "\n";
        spdlog::error("{}", e.what());
        return kExitInvalid;
    }
}
