#pragma once

#include <cstdint>
#include <string>

namespace ec {

// SplitMix64: deterministic across platforms, used for all seeded randomized suites.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0.
    uint64_t below(uint64_t n) { return next() % n; }

    // Uniform in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // True with probability num/den.
    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }

    // Derive an independent stream, e.g. per suite name.
    static uint64_t mix(uint64_t seed, const std::string& tag) {
        uint64_t h = 1469598103934665603ULL ^ seed;
        for (unsigned char c : tag) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

} // namespace ec
