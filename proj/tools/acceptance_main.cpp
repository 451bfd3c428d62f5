// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: ringlab_acceptance [jobs]

#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "ringlab/acceptance.hpp"

int main(int argc, char** argv) {
    ringlab::acceptance::Options opts;
    if (argc > 1) opts.jobs = static_cast<unsigned>(std::max(1, std::atoi(argv[1])));
    bool ok = true;
    for (const auto& r : ringlab::acceptance::run(opts)) {
        std::cout << ringlab::acceptance::format_line(r) << std::endl;
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << std::endl;
    return ok ? 0 : 1;
}
