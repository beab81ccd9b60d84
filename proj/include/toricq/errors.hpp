#pragma once

#include <stdexcept>
#include <string>

namespace toricq {

// Base class for every failure raised by the library. `code()` is the
// machine-readable tag that the CLI echoes in its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Malformed or mathematically invalid input (empty, unbounded, redundant...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error("validation", what) {}
    ValidationError(std::string code, const std::string& what) : Error(std::move(code), what) {}
};

// Number field declaration is inconsistent (reducible minimal polynomial,
// isolating interval without a unique root, refinement cap exceeded).
struct FieldError : Error {
    explicit FieldError(const std::string& what) : Error("field_definition", what) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

// Point outside the admissible open set C^d_Delta.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("outside_cd_delta", what) {}
};

struct SolverError : Error {
    SolverError(const std::string& what, double last_residual, int iterations)
        : Error("solver_nonconvergence", what), residual(last_residual), iterations(iterations) {}
    double residual;
    int iterations;
};

struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error("internal", what) {}
};

}  // namespace toricq
