#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ipmesh {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured quantity against its bound
};

/// Randomized invariant checks across all modules (gradient consistency,
/// skewness, secant property, operator identities, de Boor exactness,
/// interpolation, conservation of the corrected step and of the preserving
/// transfer). Deterministic for a given seed.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed);

}  // namespace ipmesh
