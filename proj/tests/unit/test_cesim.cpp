#include <doctest.h>

#include "ec/cesim.hpp"
#include "ec/error.hpp"

using namespace ec;
using namespace ec::ce;

TEST_SUITE("cesim") {

TEST_CASE("pairing base case and inverse") {
    CHECK(pairAt(0) == std::make_pair<uint64_t, uint64_t>(0, 0));
    for (uint64_t s = 0; s < 10000; ++s) {
        auto [n, m] = pairAt(s);
        CHECK(pairIndex(n, m) == s);
    }
}

TEST_CASE("pairing covers the 5x5 square within 61 stages") {
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (uint64_t s = 0; s < 61; ++s) seen.insert(pairAt(s));
    for (uint64_t n = 0; n < 5; ++n)
        for (uint64_t m = 0; m < 5; ++m) CHECK(seen.count({n, m}) == 1);
}

TEST_CASE("pairing is injective on a window") {
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (uint64_t s = 0; s < 5000; ++s) CHECK(seen.insert(pairAt(s)).second);
}

TEST_CASE("schedule stage reads") {
    CeSchedule w{{{2, 0}, {5, 3}}};
    CHECK(w.at(1) == std::set<uint64_t>{2});
    CHECK(w.at(3) == std::set<uint64_t>{2, 5});
    CHECK(CeSchedule{}.at(100).empty());
    // monotone in s
    for (uint64_t s = 0; s < 10; ++s) {
        auto a = w.at(s);
        auto b = w.at(s + 1);
        for (uint64_t e : a) CHECK(b.count(e) == 1);
    }
    CHECK(w.support() == std::set<uint64_t>{2, 5});
}

TEST_CASE("schedule text round trip") {
    CeSchedule w{{{0, 0}, {7, 12}}};
    auto back = CeSchedule::parse(w.serialize());
    CHECK(back.entries == w.entries);
    CHECK_THROWS_AS(CeSchedule::parse("1 two"), Error);
}

TEST_CASE("predicate catalog") {
    auto always = Pi03Predicate::byName("always");
    CHECK(always.eval(3, 9, 2, 0));
    auto fail1 = Pi03Predicate::byName("fail-at:1");
    CHECK(fail1.eval(0, 5, 5, 0));
    CHECK_FALSE(fail1.eval(1, 5, 5, 0));
    auto thresh = Pi03Predicate::byName("threshold:2,4");
    CHECK(thresh.eval(0, 0, 0, 0));
    CHECK_FALSE(thresh.eval(2, 3, 0, 0));
    CHECK(thresh.eval(2, 4, 0, 0));
    CHECK_THROWS_AS(Pi03Predicate::byName("sometimes"), Error);
    CHECK_THROWS_AS(Pi03Predicate::byName("threshold:1"), Error);
}

TEST_CASE("truth table predicate") {
    auto p = Pi03Predicate::fromTruthTable("default 1\n0 0 3 0 0\n");
    CHECK(p.eval(0, 0, 2, 0));
    CHECK_FALSE(p.eval(0, 0, 3, 0));
    CHECK(p.eval(5, 5, 5, 5));
}

} // TEST_SUITE
