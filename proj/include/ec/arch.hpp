#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ec/cesim.hpp"
#include "ec/creal.hpp"
#include "ec/mpoly.hpp"

namespace ec::rcf {

// Constants b_{t,j} (row t, candidate j) are flattened into variable indices
// by the Cantor pairing, so atom streams enumerate them diagonally. Row t
// tracks the target real a(t) = e^{sqrt(p_{t+1})}; candidates retired by the
// construction become rationals chosen inside shrinking enclosures of a(t).

inline int flattenConstant(int row, int cand) {
    return static_cast<int>(ce::pairIndex(static_cast<uint64_t>(row), static_cast<uint64_t>(cand)));
}
inline std::pair<int, int> unflattenConstant(int var) {
    auto [r, c] = ce::pairAt(static_cast<uint64_t>(var));
    return {static_cast<int>(r), static_cast<int>(c)};
}

CReal rowTarget(int row); // e^{sqrt(prime(row+1))}, memoized per row

enum class Rel { Eq, Le };

struct ArchAtom {
    field::MPoly poly; // over flattened constant variables
    Rel rel;
};

struct ArchFact {
    ArchAtom atom;
    bool truth;
    uint64_t step;
};

struct ArchRetreat {
    int row;
    std::vector<std::pair<int, int>> retired; // the component retired together
    Rat value;
    size_t factCount;
    uint64_t step;
    std::map<std::pair<int, int>, Rat> retiredSnapshot; // assignment after this retreat
};

struct ArchState {
    int rows = 0;
    uint64_t steps = 0;
    uint64_t predParamN = 0;
    std::map<std::pair<int, int>, Rat> retired; // (row, cand) -> rational
    std::vector<int> live;                      // m_t per row
    std::vector<int> retreatCounts;
    std::vector<ArchFact> facts;
    std::vector<ArchRetreat> retreats;
    std::vector<std::string> trace;
};

// Substitutes retired constants by their rationals; the surviving live
// constants of row t collapse onto the row variable Y_t.
field::MPoly archSubstitute(const field::MPoly& atomPoly,
                            const std::map<std::pair<int, int>, Rat>& retired);

// Sign of a polynomial in the row targets: exact zero test first (the targets
// are algebraically independent), interval refinement for the rest.
int signOfRowPoly(const field::MPoly& q);

bool atomTruth(const ArchAtom& atom, const std::map<std::pair<int, int>, Rat>& retired);

// Stage-bounded run: even steps decide the next atom by sign evaluation, odd
// steps drop candidates whose predicate check failed to a rational in the
// current enclosure of the row target.
ArchState archEncode(const ce::Pi03Predicate& R, uint64_t n, uint64_t stages, int rows = 4);

struct CutStatus {
    int liveMarker;
    int retreatCount;
    Interval enclosure; // of the row target, at the requested precision
};

// Throws UnknownRow for rows the run never probed.
CutStatus cutStatus(const ArchState& st, int t, int precision = 20);

} // namespace ec::rcf
