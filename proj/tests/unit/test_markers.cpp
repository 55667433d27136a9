#include <doctest.h>

#include <functional>

#include "ec/markers.hpp"
#include "ec/rng.hpp"

using namespace ec;
using namespace ec::markers;

namespace {

// Brute-force witness search: some subset of size n of the window images is
// linearly independent (checked by elimination on every subset).
bool bruteForceDn(const VsTable& t, int n, int m) {
    std::vector<Vec> images;
    for (int e = 0; e < m; ++e) images.push_back(t.imageOf(e));
    if (n == 0) return true;
    if (n > m) return false;
    std::vector<int> pick;
    std::function<bool(int)> rec = [&](int from) -> bool {
        if (static_cast<int>(pick.size()) == n) {
            // rank of the picked set equals n?
            std::map<int, Vec> pivots;
            int rank = 0;
            for (int idx : pick) {
                Vec row = images[static_cast<size_t>(idx)];
                while (!row.empty()) {
                    auto p = pivots.find(row.begin()->first);
                    if (p == pivots.end()) break;
                    Rat c = row.begin()->second;
                    for (const auto& [b, x] : p->second) {
                        Rat& slot = row[b];
                        slot -= c * x;
                        if (slot == 0) row.erase(b);
                    }
                }
                if (row.empty()) return false;
                Rat lead = row.begin()->second;
                Vec norm;
                for (const auto& [b, x] : row) norm[b] = x / lead;
                pivots[row.begin()->first] = std::move(norm);
                ++rank;
            }
            return rank == n;
        }
        for (int i = from; i < m; ++i) {
            pick.push_back(i);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(0);
}

} // namespace

TEST_SUITE("markers") {

TEST_CASE("no enumeration: all markers stay independent") {
    auto t = buildVs(ce::CeSchedule{}, 50, 4);
    CHECK(vsDimension(t, 4) == 4);
    for (int e = 0; e < 4; ++e) CHECK(t.imageOf(e) == Vec{{e, Rat(1)}});
    CHECK(t.moves.empty());
}

TEST_CASE("two early entries retract their markers") {
    ce::CeSchedule w{{{0, 0}, {2, 1}}};
    auto t = buildVs(w, 80, 4);
    CHECK(t.moves.size() == 2);
    CHECK(vsDimension(t, 4) == 2);
    // moved markers landed in the span of earlier images (here: zero)
    for (const auto& mv : t.moves) CHECK(vecIsZero(mv.image));
}

TEST_CASE("dimension depends on the set, not the enumeration order") {
    ce::CeSchedule w1{{{1, 0}, {3, 2}}};
    ce::CeSchedule w2{{{3, 0}, {1, 1}}};
    CHECK(vsDimension(buildVs(w1, 100, 5), 5) == 3);
    CHECK(vsDimension(buildVs(w2, 100, 5), 5) == 3);
}

TEST_CASE("windowed dimension extremes") {
    ce::CeSchedule all{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
    CHECK(vsDimension(buildVs(all, 120, 4), 4) == 0);
    CHECK(vsDimension(buildVs(ce::CeSchedule{}, 40, 4), 4) == 4);
    ce::CeSchedule one{{{1, 1}}};
    CHECK(vsDimension(buildVs(one, 80, 4), 4) == 3);
}

TEST_CASE("pending attention raises NotStabilized") {
    ce::CeSchedule w{{{1, 500}}};
    auto t = buildVs(w, 50, 4);
    CHECK_THROWS_AS(vsDimension(t, 4), Error);
    try {
        vsDimension(t, 4);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotStabilized);
    }
    // outside the window the entry does not block
    ce::CeSchedule w2{{{9, 500}}};
    CHECK(vsDimension(buildVs(w2, 50, 4), 4) == 4);
}

TEST_CASE("decided facts replay against the final images") {
    ce::CeSchedule w{{{0, 0}, {3, 2}}};
    auto t = buildVs(w, 160, 6);
    CHECK(t.facts.size() > 10);
    for (const auto& f : t.facts)
        CHECK(vecIsZero(evalLinCombVec(f.lambda, t.images)) == f.isZero);
    // and against each move snapshot at its time
    for (const auto& mv : t.moves)
        for (size_t i = 0; i < mv.factCount; ++i)
            CHECK(vecIsZero(evalLinCombVec(t.facts[i].lambda, mv.snapshot)) == t.facts[i].isZero);
}

TEST_CASE("every early lambda is decided at some stage") {
    auto t = buildVs(ce::CeSchedule{}, 400, 4);
    auto prefix = linCombStream(20);
    for (const auto& lambda : prefix) {
        bool decided = false;
        for (const auto& f : t.facts)
            if (f.lambda == lambda) decided = true;
        CHECK(decided);
    }
}

TEST_CASE("attended markers stay in the span of earlier images") {
    SplitMix64 rng(0xaaaa);
    for (int trial = 0; trial < 10; ++trial) {
        ce::CeSchedule w;
        for (int e = 0; e < 6; ++e)
            if (rng.chance(1, 2)) w.entries.emplace_back(e, rng.below(static_cast<uint64_t>(e) + 1));
        auto t = buildVs(w, 150, 6);
        for (int e : t.attended) {
            // final image of e must be a combination of images below e
            std::map<int, Vec> below;
            for (int i = 0; i < e; ++i) below.emplace(i, t.imageOf(i));
            Vec img = t.imageOf(e);
            // eliminate img against the span
            std::map<int, Vec> pivots;
            for (auto& [i, row0] : below) {
                Vec row = row0;
                while (!row.empty()) {
                    auto p = pivots.find(row.begin()->first);
                    if (p == pivots.end()) break;
                    Rat c = row.begin()->second;
                    for (const auto& [b, x] : p->second) {
                        Rat& slot = row[b];
                        slot -= c * x;
                        if (slot == 0) row.erase(b);
                    }
                }
                if (row.empty()) continue;
                Rat lead = row.begin()->second;
                Vec norm;
                for (const auto& [b, x] : row) norm[b] = x / lead;
                pivots[row.begin()->first] = std::move(norm);
            }
            Vec r = img;
            while (!r.empty()) {
                auto p = pivots.find(r.begin()->first);
                if (p == pivots.end()) break;
                Rat c = r.begin()->second;
                for (const auto& [b, x] : p->second) {
                    Rat& slot = r[b];
                    slot -= c * x;
                    if (slot == 0) r.erase(b);
                }
            }
            CHECK(r.empty());
        }
    }
}

TEST_CASE("probe agrees with brute-force witness search on small windows") {
    SplitMix64 rng(0xd0);
    for (int trial = 0; trial < 8; ++trial) {
        ce::CeSchedule w;
        for (int e = 0; e < 5; ++e)
            if (rng.chance(1, 2)) w.entries.emplace_back(e, rng.below(static_cast<uint64_t>(e) + 1));
        auto t = buildVs(w, 140, 5);
        for (int n = 0; n <= 6; ++n) CHECK(probeDn(t, n, 5) == bruteForceDn(t, n, 5));
    }
}

TEST_CASE("acf: no enumeration keeps transcendentals") {
    auto t = buildAcf(ce::CeSchedule{}, 60, 3);
    CHECK(acfTrdeg(t, 3) == 3);
    CHECK(probeTn(t, 3, 3));
    CHECK_FALSE(probeTn(t, 4, 3));
}

TEST_CASE("acf: one entry drops the degree and keeps the diagram true") {
    ce::CeSchedule w{{{1, 1}}};
    auto t = buildAcf(w, 120, 3);
    CHECK(acfTrdeg(t, 3) == 2);
    CHECK(probeTn(t, 1, 3));
    CHECK(probeTn(t, 2, 3));
    CHECK_FALSE(probeTn(t, 3, 3));
    // facts decided before the injury are still true of the final images
    for (const auto& f : t.facts)
        CHECK(evalPolyComb(f.lambda, t.images).isZero() == f.isZero);
    // the replacement constant satisfied every inequation of its stage
    REQUIRE(t.moves.size() == 1);
    const auto& mv = t.moves[0];
    for (size_t i = 0; i < mv.factCount; ++i)
        CHECK(evalPolyComb(t.facts[i].lambda, mv.snapshot).isZero() == t.facts[i].isZero);
}

TEST_CASE("acf: late entries still give the exact degree") {
    // constants carry no transcendence whatever the entry stage
    ce::CeSchedule w{{{0, 40}, {2, 45}}};
    auto t = buildAcf(w, 160, 4);
    CHECK(acfTrdeg(t, 4) == 2);
    for (const auto& f : t.facts)
        CHECK(evalPolyComb(f.lambda, t.images).isZero() == f.isZero);
}

TEST_CASE("acf stabilization errors") {
    ce::CeSchedule w{{{0, 900}}};
    auto t = buildAcf(w, 60, 3);
    CHECK_THROWS_AS(acfTrdeg(t, 3), Error);
}

TEST_CASE("trace names the requirement served") {
    ce::CeSchedule w{{{0, 0}}};
    auto t = buildVs(w, 20, 3);
    bool sawP = false, sawQ = false;
    for (const auto& line : t.trace) {
        if (line.find("P1") != std::string::npos) sawP = true;
        if (line.find("Q_0") != std::string::npos) sawQ = true;
    }
    CHECK(sawP);
    CHECK(sawQ);
}

} // TEST_SUITE
