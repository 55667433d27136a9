#include <doctest.h>

#include "ec/digraph.hpp"
#include "ec/error.hpp"
#include "ec/selftest.hpp"

using namespace ec;

TEST_SUITE("cli-surfaces") {

TEST_CASE("edge list text round trip") {
    Digraph g;
    g.n = 4;
    g.edges = {{0, 1}, {3, 3}};
    g.identified = {{1, 2}};
    auto back = Digraph::fromEdgeListText(g.toEdgeListText());
    CHECK(back.n == 4);
    CHECK(back.edges == g.edges);
    CHECK(back.identified == g.identified);
}

TEST_CASE("edge list rejects malformed input") {
    CHECK_THROWS_AS(Digraph::fromEdgeListText("0 1\n"), Error);          // no header
    CHECK_THROWS_AS(Digraph::fromEdgeListText("vertices 2\n0 5\n"), Error);
    CHECK_THROWS_AS(Digraph::fromEdgeListText("vertices 2\nx y\n"), Error);
    CHECK_THROWS_AS(Digraph::fromEdgeListText("vertices 2\nidentify 0 9\n"), Error);
}

TEST_CASE("identification closure and quotient") {
    Digraph g;
    g.n = 3;
    g.edges = {{0, 1}};
    g.identified = {{1, 2}};
    auto closed = g.congruenceClosed();
    CHECK(closed.hasEdge(0, 2));
    auto q = g.quotient();
    CHECK(q.n == 2);
    CHECK(q.edges == std::set<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("selftest reports are byte-stable for a fixed seed") {
    SelftestConfig cfg;
    cfg.seed = 11;
    cfg.trials = 3;
    cfg.onlySuite = "pairing";
    auto a = runSelftest(cfg);
    auto b = runSelftest(cfg);
    CHECK(a.structuredReport() == b.structuredReport());
    CHECK(a.textReport() == b.textReport());
    CHECK(a.allPassed());
}

TEST_CASE("unknown suite is a usage-level error") {
    SelftestConfig cfg;
    cfg.onlySuite = "nonsense";
    CHECK_THROWS_AS(runSelftest(cfg), Error);
}

} // TEST_SUITE
