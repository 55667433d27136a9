#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ec/cesim.hpp"
#include "ec/ratfunc.hpp"

namespace ec::markers {

// ---------------------------------------------------------------------------
// Vector-space construction: markers b_e carry sparse rational vectors over a
// fixed basis a_0, a_1, ...; even stages decide linear facts about the
// markers, odd stages retract markers whose index has been enumerated.
// ---------------------------------------------------------------------------

using Vec = std::map<int, Rat>;     // basis index -> coordinate
using LinComb = std::map<int, Rat>; // marker index -> coefficient

Rat evalLinComb(const LinComb& lambda, const std::map<int, Vec>& images, int basisIndex);
Vec evalLinCombVec(const LinComb& lambda, const std::map<int, Vec>& images);
bool vecIsZero(const Vec& v);
std::string linCombStr(const LinComb& lambda);

// Canonical lambda stream: primitive integer coefficient tuples with first
// nonzero coefficient positive, support size <= 3, graded by
// (max marker index) + (max absolute coefficient). Returns the first `count`.
std::vector<LinComb> linCombStream(size_t count);

struct VsFact {
    LinComb lambda;
    bool isZero;
    uint64_t step;
};

struct VsMove {
    int marker;
    Vec image;
    bool pinned;            // a positive fact froze the marker in place
    size_t factCount;       // decided facts at move time
    uint64_t step;
    std::map<int, Vec> snapshot; // images right after the move
};

// MarkerTable for the vector-space construction.
struct VsTable {
    std::map<int, Vec> images;
    std::set<int> attended;
    std::vector<VsFact> facts;
    std::vector<VsMove> moves;
    uint64_t steps = 0;
    ce::CeSchedule schedule;
    std::vector<std::string> trace;

    Vec imageOf(int marker) const; // defaults to the basis vector a_marker
};

VsTable buildVs(const ce::CeSchedule& schedule, uint64_t stages, int window);

// Rank over Q of the images of b_0..b_{m-1}; NotStabilized when some
// enumerated index below m has not received attention.
int vsDimension(const VsTable& t, int m);
bool probeDn(const VsTable& t, int n, int m); // "at least n independent elements"

// ---------------------------------------------------------------------------
// Algebraically closed field construction: markers carry rational functions
// in transcendentals T_0, T_1, ...; retracted markers become rational
// constants, which always lie in the algebraic closure of anything.
// ---------------------------------------------------------------------------

field::RatFunc evalPolyComb(const field::MPoly& lambda, const std::map<int, field::RatFunc>& images);

// Polynomial lambda stream over at most two markers, total degree <= 2,
// primitive integer coefficients, same grading idea as linCombStream.
std::vector<field::MPoly> polyCombStream(size_t count);

struct AcfFact {
    field::MPoly lambda; // polynomial in marker variables
    bool isZero;
    uint64_t step;
};

struct AcfMove {
    int marker;
    Rat constant;
    size_t factCount;
    uint64_t step;
    std::map<int, field::RatFunc> snapshot;
};

struct AcfTable {
    std::map<int, field::RatFunc> images;
    std::set<int> attended;
    std::vector<AcfFact> facts;
    std::vector<AcfMove> moves;
    uint64_t steps = 0;
    ce::CeSchedule schedule;
    std::vector<std::string> trace;

    field::RatFunc imageOf(int marker) const; // defaults to T_marker
};

AcfTable buildAcf(const ce::CeSchedule& schedule, uint64_t stages, int window);

// Transcendence degree of the images of b_0..b_{m-1} via the Jacobian
// criterion (characteristic 0); NotStabilized as for vsDimension.
int acfTrdeg(const AcfTable& t, int m);
bool probeTn(const AcfTable& t, int n, int m);

} // namespace ec::markers
