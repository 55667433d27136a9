#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ec::ce {

// Enumeration schedule for a c.e. set: W_s = { e : (e, t) in entries, t <= s }.
struct CeSchedule {
    std::vector<std::pair<uint64_t, uint64_t>> entries; // (element, stage)

    std::set<uint64_t> at(uint64_t s) const;
    std::set<uint64_t> support() const; // union over all stages

    static CeSchedule parse(const std::string& text); // lines "element stage"
    std::string serialize() const;
};

// Cantor diagonal pairing: stage s -> (n, m), inverse pairIndex(n, m) -> s.
std::pair<uint64_t, uint64_t> pairAt(uint64_t s);
uint64_t pairIndex(uint64_t n, uint64_t m);

// Total decidable predicate R(i, j, z, n) feeding the Pi-0-3 constructions.
struct Pi03Predicate {
    std::string name;
    std::function<bool(uint64_t i, uint64_t j, uint64_t z, uint64_t n)> eval;

    // Catalog: "always", "fail-at:i", "threshold:i,j"; anything else is BadInput.
    static Pi03Predicate byName(const std::string& spec);
    // Truth-table text: optional "default 0|1" line, then "i j z n 0|1" lines.
    static Pi03Predicate fromTruthTable(const std::string& text);
};

} // namespace ec::ce
