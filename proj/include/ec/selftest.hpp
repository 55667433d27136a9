#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ec {

struct SelftestConfig {
    uint64_t seed = 7;
    int trials = 20;
    std::string onlySuite; // empty = all
};

struct SelftestResult {
    struct Suite {
        std::string name;
        int trials = 0;
        int failures = 0;
        std::string note;
    };
    std::vector<Suite> suites;
    uint64_t seed = 0;

    bool allPassed() const;
    std::string textReport() const;
    std::string structuredReport() const; // stable bytes for a fixed config
};

SelftestResult runSelftest(const SelftestConfig& cfg);

} // namespace ec
