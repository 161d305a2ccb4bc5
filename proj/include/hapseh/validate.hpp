#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace hapseh::app {

enum class ValidationLevel { quick, full };

struct Check {
    std::string name;
    bool passed = false;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::string level;
    std::vector<Check> checks;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

/// quick: closed form vs oracle, normalizations, budgets, orderings,
/// error paths and a small seeded Monte-Carlo run. full adds the 10^6-trial
/// comparisons, sampler KS tests and the published figure read-offs.
ValidationReport run_validation(ValidationLevel level, unsigned workers = 1);

} // namespace hapseh::app
