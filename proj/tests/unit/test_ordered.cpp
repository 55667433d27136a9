#include <doctest.h>

#include <algorithm>

#include "../support/oracles.hpp"
#include "ec/ordered_field.hpp"
#include "ec/poly_text.hpp"
#include "ec/rng.hpp"

using namespace ec;
using namespace ec::rcf;
using field::parseRatFunc;
using field::RatFunc;

namespace {

RatFunc randomFunc(SplitMix64& rng, int vars) {
    field::MPoly n, d;
    auto mono = [&](int deg) {
        field::Monomial m(static_cast<size_t>(vars), 0);
        for (int k = 0; k < deg; ++k) m[rng.below(static_cast<uint64_t>(vars))] += 1;
        return m;
    };
    int nt = 1 + static_cast<int>(rng.below(5));
    for (int i = 0; i < nt; ++i) {
        int c = static_cast<int>(rng.range(-8, 8));
        n += field::MPoly::monomial(mono(static_cast<int>(rng.below(5))), Rat(c == 0 ? 3 : c));
    }
    int dt = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < dt; ++i) {
        int c = static_cast<int>(rng.range(-8, 8));
        d += field::MPoly::monomial(mono(static_cast<int>(rng.below(4))), Rat(c == 0 ? 2 : c));
    }
    if (d.isZero()) d = field::MPoly::constant(Rat(1));
    return RatFunc(n, d);
}

LinearOrder randomOrder(SplitMix64& rng, int n) {
    std::vector<int> chain(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) chain[static_cast<size_t>(i)] = i + 1;
    for (size_t i = chain.size(); i > 1; --i) std::swap(chain[i - 1], chain[rng.below(i)]);
    return LinearOrder::fromChain(chain);
}

} // namespace

TEST_SUITE("ordered-field") {

TEST_CASE("order parsing and printing") {
    auto L = LinearOrder::parse("2<1<3");
    CHECK(L.str() == "2<1<3");
    CHECK(L.leq(2, 1));
    CHECK(L.leq(1, 3));
    CHECK_FALSE(L.leq(3, 2));
    CHECK_THROWS_AS(LinearOrder::parse("1<1"), Error);
    CHECK_THROWS_AS(LinearOrder::parse("1<"), Error);
}

TEST_CASE("sign: the dominant generator beats any polynomial below it") {
    auto p = OrderedPresentation::encode(LinearOrder::parse("1<2"));
    CHECK(sign(p, parseRatFunc("X2 - X1^100")) == 1);
    CHECK(sign(p, parseRatFunc("0-3")) == -1);
    CHECK(sign(p, RatFunc()) == 0);
    CHECK(sign(p, parseRatFunc("(X1 - X2)/(X2 + 1)")) == -1);
}

TEST_CASE("sign is compatible with the field operations") {
    SplitMix64 rng(0x0a1);
    auto p = OrderedPresentation::encode(LinearOrder::parse("3<1<2"));
    int done = 0;
    while (done < 60) {
        RatFunc f = randomFunc(rng, 3);
        RatFunc g = randomFunc(rng, 3);
        if (f.isZero() || g.isZero()) continue;
        ++done;
        CHECK(sign(p, f * g) == sign(p, f) * sign(p, g));
        if (sign(p, f) > 0 && sign(p, g) > 0) CHECK(sign(p, f + g) > 0);
    }
}

TEST_CASE("sign matches the numeric substitution oracle at two growth bases") {
    SplitMix64 rng(0x0b2);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + static_cast<int>(rng.below(3));
        auto L = randomOrder(rng, n);
        auto p = OrderedPresentation::encode(L);
        RatFunc f = randomFunc(rng, n);
        // spec substitution: X(rank r) -> 10^(8^r); degrees < 8, mass < 9 * B/(B-1)
        CHECK(sign(p, f) == oracles::numericSign(f, L, 10, 8));
        CHECK(sign(p, f) == oracles::numericSign(f, L, 13, 9));
    }
}

TEST_CASE("preceq on generators mirrors the order") {
    auto p = OrderedPresentation::encode(LinearOrder::parse("1<2"));
    CHECK(preceq(p, parseRatFunc("X1"), parseRatFunc("X2")));
    CHECK_FALSE(preceq(p, parseRatFunc("X2"), parseRatFunc("X1")));
    for (int n = 2; n <= 5; ++n) {
        SplitMix64 rng(static_cast<uint64_t>(n) * 77);
        auto L = randomOrder(rng, n);
        auto q = OrderedPresentation::encode(L);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                CHECK(preceq(q, RatFunc::var(i - 1), RatFunc::var(j - 1)) == L.leq(i, j));
    }
}

TEST_CASE("powers and products share a class") {
    auto p = OrderedPresentation::encode(LinearOrder::parse("1<2"));
    CHECK(preceq(p, parseRatFunc("X1^2"), parseRatFunc("X1")));
    CHECK(preceq(p, parseRatFunc("X1"), parseRatFunc("X1^2")));
    CHECK(preceq(p, parseRatFunc("X1*X2"), parseRatFunc("X2")));
    CHECK(preceq(p, parseRatFunc("X2"), parseRatFunc("X1*X2")));
    // the literal paper reading is not power-closed
    CHECK_FALSE(preceqPaperLiteral(p, parseRatFunc("X1^2"), parseRatFunc("X1")));
    CHECK(preceqPaperLiteral(p, parseRatFunc("X1"), parseRatFunc("X1^2")));
    // but both readings agree on the generators
    CHECK(preceqPaperLiteral(p, parseRatFunc("X1"), parseRatFunc("X2")));
    CHECK_FALSE(preceqPaperLiteral(p, parseRatFunc("X2"), parseRatFunc("X1")));
}

TEST_CASE("preceq requires positive infinite arguments") {
    auto p = OrderedPresentation::encode(LinearOrder::parse("1<2"));
    CHECK_THROWS_AS(preceq(p, parseRatFunc("1/X1"), parseRatFunc("X2")), Error);
    CHECK_THROWS_AS(preceq(p, parseRatFunc("0-X1"), parseRatFunc("X2")), Error);
    try {
        preceq(p, parseRatFunc("3"), parseRatFunc("X2"));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotInfinite);
    }
}

TEST_CASE("comparability classes partition the positive infinite elements") {
    SplitMix64 rng(0x0c3);
    auto L = randomOrder(rng, 4);
    auto p = OrderedPresentation::encode(L);
    std::vector<RatFunc> members;
    while (members.size() < 40) {
        RatFunc f = randomFunc(rng, 4);
        if (f.isZero()) continue;
        if (sign(p, f) < 0) f = -f;
        if (isPositiveInfinite(p, f)) members.push_back(f);
    }
    for (const auto& f : members) {
        int cls = comparabilityClassVar(p, f);
        // equivalent to exactly the generator of its class
        for (int i = 1; i <= 4; ++i) {
            bool equiv = preceq(p, f, RatFunc::var(i - 1)) && preceq(p, RatFunc::var(i - 1), f);
            CHECK(equiv == (i == cls));
        }
    }
    // reflexive and transitive on a sample
    for (size_t i = 0; i + 2 < members.size(); i += 3) {
        CHECK(preceq(p, members[i], members[i]));
        if (preceq(p, members[i], members[i + 1]) && preceq(p, members[i + 1], members[i + 2]))
            CHECK(preceq(p, members[i], members[i + 2]));
    }
}

TEST_CASE("preceq matches the exhibit-n oracle") {
    SplitMix64 rng(0x0d4);
    int done = 0;
    while (done < 40) {
        int n = 2 + static_cast<int>(rng.below(2));
        auto L = randomOrder(rng, n);
        auto p = OrderedPresentation::encode(L);
        RatFunc f = randomFunc(rng, n);
        RatFunc g = randomFunc(rng, n);
        if (f.isZero() || g.isZero()) continue;
        if (sign(p, f) < 0) f = -f;
        if (sign(p, g) < 0) g = -g;
        if (!isPositiveInfinite(p, f) || !isPositiveInfinite(p, g)) continue;
        ++done;
        bool symbolic = preceq(p, f, g);
        bool numeric = false;
        for (int k = 1; k <= 8 && !numeric; ++k) {
            RatFunc h = g.pow(k) - f;
            if (h.isZero()) {
                numeric = true;
                break;
            }
            auto [b0, r0] = oracles::faithfulParams(h, 0);
            auto [b1, r1] = oracles::faithfulParams(h, 1);
            if (oracles::numericSign(h, L, b0, r0) >= 0 && oracles::numericSign(h, L, b1, r1) >= 0)
                numeric = true;
        }
        CHECK(symbolic == numeric);
    }
}

TEST_CASE("order decode round trip on every order of size up to 4") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> chain(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) chain[static_cast<size_t>(i)] = i + 1;
        std::sort(chain.begin(), chain.end());
        do {
            auto L = LinearOrder::fromChain(chain);
            CHECK(decodeOrder(OrderedPresentation::encode(L)) == L);
        } while (std::next_permutation(chain.begin(), chain.end()));
    }
}

TEST_CASE("decode is invariant under positive scaling and powers") {
    auto L = LinearOrder::parse("2<1<3");
    auto p = OrderedPresentation::encode(L);
    p.generators[0] = parseRatFunc("7*X1^3");
    p.generators[1] = parseRatFunc("X2^2/5");
    p.generators[2] = parseRatFunc("2*X3");
    CHECK(decodeOrder(p) == L);
    // singleton order
    CHECK(decodeOrder(OrderedPresentation::encode(LinearOrder::parse("1"))) ==
          LinearOrder::parse("1"));
}

TEST_CASE("shared classes are rejected at decode") {
    auto p = OrderedPresentation::encode(LinearOrder::parse("1<2"));
    p.generators[1] = parseRatFunc("X1^2");
    CHECK_THROWS_AS(decodeOrder(p), Error);
    try {
        decodeOrder(p);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotACode);
    }
}

TEST_CASE("presentation json round trip") {
    auto L = LinearOrder::parse("3<1<2");
    auto p = OrderedPresentation::encode(L);
    p.generators[2] = parseRatFunc("5*X3^2");
    auto back = OrderedPresentation::fromJson(p.toJson());
    CHECK(back.order == L);
    CHECK(back.generators[2] == p.generators[2]);
}

} // TEST_SUITE
