#pragma once

// JSON and DOT serialization. Scalars are arrays of "p/q" strings (power
// basis coordinates), complex vectors are [[re, im], ...], facet indices
// are 1-based.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "toricq/orbit.hpp"
#include "toricq/strata.hpp"

namespace toricq {

using Json = nlohmann::ordered_json;

struct ProblemInstance {
    FieldPtr field;
    std::optional<Polytope> polytope;
    SolverConfig solver;
    std::uint64_t seed = 0;
};

FieldPtr parse_field(const Json& j);
Json field_to_json(const FieldPtr& f);

FieldScalar parse_scalar(const Json& j, const FieldPtr& f);
Json scalar_to_json(const FieldScalar& s, const FieldPtr& f);
FieldVector parse_vector(const Json& j, const FieldPtr& f);
Json vector_to_json(const FieldVector& v, const FieldPtr& f);
Json matrix_to_json(const FieldMatrix& m, const FieldPtr& f);  // list of rows

/// Throws ValidationError for malformed documents and anything the
/// Polytope constructor rejects; FieldError for bad field declarations.
ProblemInstance parse_instance(const Json& j);
ProblemInstance parse_instance_text(const std::string& text);
Json instance_to_json(const ProblemInstance& inst);
Json polytope_to_json(const Polytope& p);

ComplexVector parse_point(const Json& j);
Json point_to_json(const ComplexVector& z);
Json real_vector_to_json(const Eigen::VectorXd& v);
Json index_set_to_json(const IndexSet& s);

Json group_to_json(const GroupPresentation& g, const FieldPtr& f);
Json faces_to_json(const FaceLattice& lat);
std::string faces_to_dot(const FaceLattice& lat);
Json analyze_to_json(const ToricModel& model);
Json gamma_table_to_json(const Polytope& p);
Json report_to_json(const StratificationReport& r, const FieldPtr& f);
Json retraction_to_json(const ToricModel& model, const OrbitClass& c, const SolverConfig& cfg);
Json verdict_to_json(const ToricModel& model, const EquivalenceVerdict& v);
Json error_to_json(const Error& e);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace toricq
