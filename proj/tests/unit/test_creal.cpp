#include <doctest.h>

#include "ec/creal.hpp"

using namespace ec;
using namespace ec::rcf;

namespace {

// frozen decimal enclosures of the first targets (40-digit oracle values)
Rat oracleValue(int i) {
    switch (i) {
        case 1: return ratParse("4113250378782927517") / ratParse("1000000000000000000");
        case 2: return ratParse("5652233674034092116") / ratParse("1000000000000000000");
        case 3: return ratParse("9356469016601147354") / ratParse("1000000000000000000");
        case 4: return ratParse("14094030107067812053") / ratParse("1000000000000000000");
        default: return Rat(0);
    }
}

} // namespace

TEST_SUITE("creal") {

TEST_CASE("primes are 1-based") {
    CHECK(nthPrime(1) == 2);
    CHECK(nthPrime(2) == 3);
    CHECK(nthPrime(3) == 5);
    CHECK(nthPrime(4) == 7);
    CHECK(nthPrime(10) == 29);
}

TEST_CASE("a1 sits in [4.11, 4.12] from precision 7 on") {
    auto a1 = CReal::expSqrtPrime(1);
    auto I7 = a1.at(7);
    CHECK(I7.contains(oracleValue(1)));
    auto I20 = a1.at(20);
    CHECK(Rat(411, 100) <= I20.lo);
    CHECK(I20.hi <= Rat(412, 100));
}

TEST_CASE("width and nesting contracts") {
    for (int i = 1; i <= 4; ++i) {
        auto a = CReal::expSqrtPrime(i);
        Interval prev = a.at(0);
        CHECK(prev.contains(oracleValue(i)));
        for (int p = 1; p <= 28; ++p) {
            Interval cur = a.at(p);
            CHECK(cur.width() <= ratPow2(-p));
            CHECK(cur.lo >= prev.lo);
            CHECK(cur.hi <= prev.hi);
            CHECK(cur.contains(oracleValue(i)));
            prev = cur;
        }
    }
}

TEST_CASE("real_approx surface") {
    auto I = realApprox(1, 10);
    CHECK(I.width() <= ratPow2(-10));
    CHECK(I.contains(oracleValue(1)));
    CHECK_THROWS_AS(realApprox(0, 5), Error);
}

TEST_CASE("sqrt enclosure brackets the value") {
    auto I = sqrtEnclosure(Rat(2), 30);
    CHECK(I.width() <= ratPow2(-30));
    CHECK(I.lo * I.lo <= Rat(2));
    CHECK(I.hi * I.hi >= Rat(2));
    auto z = sqrtEnclosure(Rat(0), 10);
    CHECK(z.lo == 0);
    CHECK(z.hi == 0);
    auto tiny = sqrtEnclosure(Rat(1, 4), 20);
    CHECK(tiny.contains(Rat(1, 2)));
}

TEST_CASE("exp enclosure brackets e") {
    auto I = expEnclosure(Rat(1), 30);
    Rat e = ratParse("2718281828459045235") / ratParse("1000000000000000000");
    CHECK(I.contains(e));
    CHECK(I.width() <= ratPow2(-30));
    auto one = expEnclosure(Rat(0), 10);
    CHECK(one.contains(Rat(1)));
}

TEST_CASE("interval arithmetic honours signs") {
    Interval a{Rat(-2), Rat(3)};
    Interval b{Rat(1), Rat(2)};
    auto p = a * b;
    CHECK(p.lo == Rat(-4));
    CHECK(p.hi == Rat(6));
    auto sq = a.pow(2);
    CHECK(sq.contains(Rat(0)));
    CHECK(sq.hi == Rat(9));
}

TEST_CASE("simplest dyadic in an interval") {
    CHECK(simplestDyadicIn(Rat(0), Rat(1)) == Rat(1, 2));
    CHECK(simplestDyadicIn(Rat(3), Rat(5)) == Rat(4));
    CHECK(simplestDyadicIn(Rat(411, 100), Rat(412, 100)) == Rat(527, 128));
    CHECK_THROWS_AS(simplestDyadicIn(Rat(1), Rat(1)), Error);
}

} // TEST_SUITE
