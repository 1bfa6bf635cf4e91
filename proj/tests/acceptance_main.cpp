// Standalone acceptance gate: runs the numbered verification criteria and
// prints one pass/fail line per criterion. Exit status 0 iff every criterion
// in the requested suite passed.
//
// usage: acceptance_runner [suite [seed [workers]]]   (defaults: all 42 4)

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "padicroots/acceptance.hpp"

using namespace padic;

int main(int argc, char** argv) {
    CriterionSuite suite = CriterionSuite::all;
    if (argc > 1) {
        if (std::strcmp(argv[1], "exact") == 0) {
            suite = CriterionSuite::exact;
        } else if (std::strcmp(argv[1], "stochastic") == 0) {
            suite = CriterionSuite::stochastic;
        } else if (std::strcmp(argv[1], "all") != 0) {
            std::fprintf(stderr, "usage: %s [all|exact|stochastic [seed [workers]]]\n", argv[0]);
            return 2;
        }
    }
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 42;
    const unsigned long workers = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 4;

    int failed = 0;
    double total_seconds = 0.0;
    const auto results = run_acceptance(suite, seed, workers, [&](const CriterionResult& r) {
        std::printf("%s %2d %-38s %8.3fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
    });
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        total_seconds += r.seconds;
    }
    std::printf("%zu/%zu criteria passed in %.1fs (seed %llu, %lu workers)\n",
                results.size() - failed, results.size(), total_seconds,
                static_cast<unsigned long long>(seed), workers);
    return failed == 0 ? 0 : 1;
}
