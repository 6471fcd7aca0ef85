#pragma once

// End-to-end reproduction checks: each criterion recomputes a reference or
// closed-form quantity with the library and compares at a fixed tolerance.

#include <string>
#include <vector>

namespace ptthermo {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Runs one criterion (1..kCriterionCount). Exceptions thrown by the
/// library are caught and reported as a failure.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance();

/// "PASS  [1] name (0.42 s): detail"
std::string format_result_line(const CriterionResult& r);

}  // namespace ptthermo
