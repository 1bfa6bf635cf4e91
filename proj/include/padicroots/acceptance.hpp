#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace padic {

/** Outcome of one numbered verification criterion. */
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

enum class CriterionSuite {
    exact,      // closed-form and oracle checks: criteria 1-8 and 14
    stochastic, // seeded Monte Carlo checks: criteria 9-13
    all
};

/**
 * Run the numbered verification criteria. Tolerances and runtime budgets are
 * pinned inside each criterion; seed and worker_count feed the stochastic
 * ones. A criterion that overruns its budget fails even when its values pass.
 * on_result, when set, is invoked with each result as it completes.
 */
std::vector<CriterionResult> run_acceptance(
    CriterionSuite suite, std::uint64_t seed, unsigned long worker_count,
    const std::function<void(const CriterionResult&)>& on_result = {});

} // namespace padic
