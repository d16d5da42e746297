#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ncgeo/parallel.hpp"

namespace ncgeo::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0;

    [[nodiscard]] bool passed() const;
};

struct Options {
    uint64_t seed = 7;
    /// Adds n = 4 matrix cohomology to criterion 1 (minutes).
    bool allow_large = false;
    Execution exec = Execution::parallel;
};

inline constexpr int criterion_count = 11;

std::string criterion_title(int id);
/// Throws std::out_of_range for ids outside 1…criterion_count. Any exception
/// raised by a check is turned into a failed check.
CriterionResult run_criterion(int id, const Options& opts);

/// all, matrix, calculus, cech, total, integral, collapse.
std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown suite.
std::vector<int> suite_criteria(std::string_view suite);
std::vector<CriterionResult> run_suite(std::string_view suite, const Options& opts);

}  // namespace ncgeo::verify
