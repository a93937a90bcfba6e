#pragma once

#include <string>
#include <vector>

namespace berscan {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured value vs bound, for the report table
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> checks;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

struct VerifyOptions {
    /// Empty runs everything; otherwise only the named suite.
    std::string suite;
    /// Offset added to the double-pole coefficient theta = 1/2.  Only for
    /// negative-control testing: any nonzero value must break the
    /// parabolicity checks.
    double theta_perturb = 0.0;
    unsigned seed = 20240101;
};

/// Invariant suites of all modules: moebius, char, elliptic, holonomy,
/// discreteness, scan.
std::vector<SuiteResult> run_verify(const VerifyOptions& opts = {});

}  // namespace berscan
