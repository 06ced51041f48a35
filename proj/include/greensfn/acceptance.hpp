#pragma once

#include <string>
#include <vector>

namespace greensfn {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Built-in verification table: reproduces the closed-form reference results
/// and the cross-validation/property suites at pinned tolerances. Each entry
/// is independent; a throw inside one criterion marks it failed with the
/// error text as detail.
std::vector<CriterionResult> run_acceptance_suite();

} // namespace greensfn
