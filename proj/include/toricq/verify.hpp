#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "toricq/io.hpp"

namespace toricq {

struct PropertyResult {
    std::string name;
    int samples = 0;
    int failures = 0;
    double tolerance = 0.0;
    std::vector<std::string> witnesses;  // first few failing samples
};

struct VerificationRun {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<PropertyResult> properties;  // sorted by name

    bool passed() const;
};

/// Point in the admissible set: a random face F, then a random subset of
/// I_F set to zero, so the orbit may or may not be closed.
ComplexVector sample_admissible_point(const FaceLattice& lat, std::mt19937_64& rng);

/// Runs every property suite on the instance with `samples` draws each.
/// Identical instance and seed give identical runs.
VerificationRun run_verification(const ProblemInstance& inst, int samples, std::uint64_t seed);

Json run_to_json(const VerificationRun& run);

}  // namespace toricq
