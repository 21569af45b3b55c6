// Acceptance gate: runs every verification criterion end to end with exact
// (zero-tolerance) checks and prints one PASS/FAIL line per criterion.
// Exits nonzero when any criterion fails.

#include "nubshift/session.hpp"

#include <cstdio>
#include <exception>

int main() {
    try {
        const auto results = nubshift::run_verification_suite("", false, false);
        int passed = 0;
        for (const auto& r : results) {
            std::printf("%s criterion %d: %s (%.3f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.seconds);
            if (r.pass) {
                ++passed;
            } else if (!r.detail.empty()) {
                std::printf("%s\n", r.detail.c_str());
            }
        }
        std::printf("passed %d/%zu\n", passed, results.size());
        return passed == static_cast<int>(results.size()) ? 0 : 1;
    } catch (const std::exception& e) {
        std::printf("acceptance run aborted: %s\n", e.what());
        return 2;
    }
}
