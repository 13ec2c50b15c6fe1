#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace entrolab {

// Outcome of one property suite: how many checks ran and what failed.
// A failure is recorded, not thrown, so one bad instance doesn't hide others.
struct SuiteResult {
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

SuiteResult run_suite_lattice(std::uint64_t seed);
SuiteResult run_suite_measures(std::uint64_t seed);
SuiteResult run_suite_sandwich(std::uint64_t seed);
SuiteResult run_suite_chain(std::uint64_t seed);
SuiteResult run_suite_variational(std::uint64_t seed);

// Dispatch by name; unknown suite names throw ConfigError.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

} // namespace entrolab
