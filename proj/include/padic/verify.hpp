#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padic/padic.hpp"
#include "padic/quad.hpp"

namespace padic {

struct CheckResult {
    std::string name;
    bool pass;
    double residual;  // max observed defect; exactly 0.0 for exact identities
    double bound;     // the tolerance the check enforces
};

struct VerifyConfig {
    Prime p;
    long r;
    long l;
    double alpha;
    BackendKind backend;
    KSign sign = KSign::Plus;
    std::uint64_t seed = 0x5eed;
};

/// Runs the invariant suite for one window configuration: exact identities
/// (zero tolerance) for the exact backend, float identities with their
/// stated tolerances otherwise. The exact backend requires integer alpha.
std::vector<CheckResult> run_verification(const VerifyConfig& config);

}  // namespace padic
