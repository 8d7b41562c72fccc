#pragma once

#include <string>
#include <vector>

namespace pseudoexit {

// The built-in verification suites: every check the library promises, run at
// its pinned tolerance. The CLI `verify` command and the acceptance test
// binary both sit on top of run_verification().
struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    // Restrict the N-parametrized suites to these orders; empty = all.
    std::vector<int> restrict_n;
};

std::vector<CriterionResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace pseudoexit
