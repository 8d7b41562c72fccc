// Acceptance driver: runs every verification suite at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit status is nonzero when
// any criterion fails.

#include <cstdio>
#include <iostream>

#include "pseudoexit/verify.hpp"

int main() {
    auto results = pseudoexit::run_verification({});
    std::cout << pseudoexit::format_report(results);
    bool ok = pseudoexit::all_passed(results);
    std::cout << (ok ? "acceptance: all criteria passed\n"
                     : "acceptance: criteria failed\n");
    return ok ? 0 : 1;
}
