#include "ec/cesim.hpp"

#include <array>
#include <map>
#include <memory>
#include <sstream>

#include "ec/error.hpp"

namespace ec::ce {

std::set<uint64_t> CeSchedule::at(uint64_t s) const {
    std::set<uint64_t> w;
    for (const auto& [e, t] : entries)
        if (t <= s) w.insert(e);
    return w;
}

std::set<uint64_t> CeSchedule::support() const {
    std::set<uint64_t> w;
    for (const auto& [e, t] : entries) w.insert(e);
    return w;
}

CeSchedule CeSchedule::parse(const std::string& text) {
    CeSchedule w;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "#") continue;
        uint64_t e, s;
        try {
            e = std::stoull(first);
        } catch (const std::exception&) {
            fail(ErrorKind::BadInput, "bad schedule line " + std::to_string(lineNo));
        }
        if (!(ls >> s)) fail(ErrorKind::BadInput, "bad schedule line " + std::to_string(lineNo));
        w.entries.emplace_back(e, s);
    }
    return w;
}

std::string CeSchedule::serialize() const {
    std::ostringstream os;
    for (const auto& [e, s] : entries) os << e << " " << s << "\n";
    return os.str();
}

std::pair<uint64_t, uint64_t> pairAt(uint64_t s) {
    // Diagonal d holds indices d(d+1)/2 .. d(d+1)/2 + d; offset k gives (d-k, k).
    uint64_t d = 0;
    while ((d + 1) * (d + 2) / 2 <= s) ++d;
    uint64_t k = s - d * (d + 1) / 2;
    return {d - k, k};
}

uint64_t pairIndex(uint64_t n, uint64_t m) {
    uint64_t d = n + m;
    return d * (d + 1) / 2 + m;
}

Pi03Predicate Pi03Predicate::byName(const std::string& spec) {
    if (spec == "always") {
        return {spec, [](uint64_t, uint64_t, uint64_t, uint64_t) { return true; }};
    }
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (head == "fail-at") {
            uint64_t row = std::stoull(rest);
            return {spec, [row](uint64_t i, uint64_t, uint64_t, uint64_t) { return i != row; }};
        }
        if (head == "threshold") {
            auto comma = rest.find(',');
            if (comma == std::string::npos) fail(ErrorKind::BadInput, "threshold needs i,j");
            uint64_t row = std::stoull(rest.substr(0, comma));
            uint64_t cut = std::stoull(rest.substr(comma + 1));
            return {spec,
                    [row, cut](uint64_t i, uint64_t j, uint64_t, uint64_t) { return i != row || j >= cut; }};
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::BadInput, "bad predicate arguments in '" + spec + "'");
    }
    fail(ErrorKind::BadInput, "unknown predicate '" + spec + "'");
}

Pi03Predicate Pi03Predicate::fromTruthTable(const std::string& text) {
    auto table = std::make_shared<std::map<std::array<uint64_t, 4>, bool>>();
    bool defaultValue = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "#") continue;
        if (first == "default") {
            int v;
            if (!(ls >> v)) fail(ErrorKind::BadInput, "bad default line in truth table");
            defaultValue = v != 0;
            continue;
        }
        std::array<uint64_t, 4> key{};
        try {
            key[0] = std::stoull(first);
        } catch (const std::exception&) {
            fail(ErrorKind::BadInput, "bad truth-table line '" + line + "'");
        }
        int v;
        if (!(ls >> key[1] >> key[2] >> key[3] >> v))
            fail(ErrorKind::BadInput, "bad truth-table line '" + line + "'");
        (*table)[key] = v != 0;
    }
    return {"table", [table, defaultValue](uint64_t i, uint64_t j, uint64_t z, uint64_t n) {
                auto it = table->find({i, j, z, n});
                return it == table->end() ? defaultValue : it->second;
            }};
}

} // namespace ec::ce
