#pragma once

// The ten end-to-end acceptance criteria, each timed against its budget.

#include <string>
#include <vector>

namespace ringlab::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0;
    double budget_seconds = 0;  // 0 means unbounded
    std::string detail;
};

struct Options {
    unsigned jobs = 4;
    std::vector<int> only;  // empty runs all
};

std::vector<CriterionResult> run(const Options& options = {});
// "[PASS] 1 classification oracle (0.01s < 1s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace ringlab::acceptance
