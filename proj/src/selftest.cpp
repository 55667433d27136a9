#include "ec/selftest.hpp"

#include <json.hpp>

#include <functional>
#include <sstream>

#include "ec/arch.hpp"
#include "ec/creal.hpp"
#include "ec/diagram.hpp"
#include "ec/graph_coding.hpp"
#include "ec/markers.hpp"
#include "ec/ordered_field.hpp"
#include "ec/rng.hpp"
#include "ec/tower.hpp"

namespace ec {

namespace {

using field::MPoly;
using field::RatFunc;

// ---------------------------------------------------------------------------
// Numeric substitution oracle: X at L-rank r evaluates to B^(K^r). Values are
// kept as sparse sums c * B^E with exact integer exponents, so the sign scan
// never touches the astronomically large numbers themselves.
// ---------------------------------------------------------------------------

struct ToweredPoint {
    Int base;   // B
    Int radix;  // K, strictly above every per-variable degree in play
    std::vector<int> rankOfVar; // 0-based variable -> L-rank
};

int signAtPoint(const MPoly& p, const ToweredPoint& pt) {
    if (p.isZero()) return 0;
    // exponent E = sum e_v * K^rank(v)
    std::vector<std::pair<Int, Rat>> terms;
    for (const auto& [mono, c] : p.terms()) {
        Int e = 0;
        for (size_t v = 0; v < mono.size(); ++v) {
            if (mono[v] == 0) continue;
            Int w = 1;
            for (int k = 0; k < pt.rankOfVar[v]; ++k) w *= pt.radix;
            e += Int(mono[v]) * w;
        }
        terms.emplace_back(e, c);
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    // Exact scan down the exponent ladder; once the accumulator magnitude
    // exceeds the remaining coefficient mass the sign cannot flip, and that
    // happens within a couple of scalings, so huge gaps never iterate.
    Rat acc(0);
    Rat massLeft(0);
    for (const auto& [e, c] : terms) massLeft += ratAbs(c);
    Int prevE = terms.front().first;
    for (const auto& [e, c] : terms) {
        if (acc != 0) {
            Int gap = prevE - e;
            for (Int k = 0; k < gap; ++k) {
                acc *= Rat(pt.base);
                if (ratAbs(acc) > massLeft) return sgn(acc);
            }
        }
        acc += c;
        massLeft -= ratAbs(c);
        prevE = e;
    }
    return sgn(acc);
}

ToweredPoint pointFor(const MPoly& p, const rcf::LinearOrder& order, int variant) {
    ToweredPoint pt;
    Rat mass(0);
    uint32_t maxDeg = 0;
    for (const auto& [m, c] : p.terms()) {
        mass += ratAbs(c);
        for (uint32_t e : m) maxDeg = std::max(maxDeg, e);
    }
    Int massI = numerator(mass) / denominator(mass) + 2;
    pt.base = massI * (variant == 0 ? 2 : 5) + 3;
    pt.radix = Int(maxDeg) + (variant == 0 ? 2 : 3);
    pt.rankOfVar.resize(static_cast<size_t>(std::max(p.varCount(), order.size())), 0);
    for (int i = 1; i <= order.size(); ++i)
        if (static_cast<size_t>(i - 1) < pt.rankOfVar.size()) pt.rankOfVar[i - 1] = order.rank(i);
    return pt;
}

// Sign of f at the towered point: faithful to the dominance order since the
// radix exceeds every degree and the base exceeds the coefficient mass.
int numericSign(const RatFunc& f, const rcf::LinearOrder& order, int variant) {
    if (f.isZero()) return 0;
    MPoly probe = f.num() * f.den(); // same sign, one polynomial
    return signAtPoint(probe, pointFor(probe, order, variant));
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

Digraph randomDigraph(SplitMix64& rng, int maxN, bool loops = true) {
    Digraph g;
    g.n = static_cast<int>(rng.range(0, maxN));
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            if (a == b && !loops) continue;
            if (rng.chance(1, 4)) g.edges.insert({a, b});
        }
    return g;
}

MPoly randomPoly(SplitMix64& rng, int vars, int deg, int coeffBound, int terms) {
    MPoly p;
    for (int t = 0; t < terms; ++t) {
        field::Monomial m(static_cast<size_t>(vars), 0);
        int budget = static_cast<int>(rng.range(0, deg));
        for (int d = 0; d < budget; ++d) m[static_cast<size_t>(rng.below(static_cast<uint64_t>(vars)))] += 1;
        int c = static_cast<int>(rng.range(-coeffBound, coeffBound));
        if (c == 0) c = 1;
        p += MPoly::monomial(m, Rat(c));
    }
    return p;
}

RatFunc randomRatFunc(SplitMix64& rng, int vars, int deg, int coeffBound) {
    MPoly num = randomPoly(rng, vars, deg, coeffBound, 1 + static_cast<int>(rng.below(5)));
    MPoly den;
    while (den.isZero()) den = randomPoly(rng, vars, deg, coeffBound, 1 + static_cast<int>(rng.below(3)));
    return RatFunc(num, den);
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

using SuiteFn = std::function<void(SplitMix64&, int, SelftestResult::Suite&)>;

void suitePairing(SplitMix64&, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int s = 0; s < trials * 50; ++s) {
        auto [n, m] = ce::pairAt(static_cast<uint64_t>(s));
        if (ce::pairIndex(n, m) != static_cast<uint64_t>(s)) out.failures++;
    }
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (int s = 0; s < 61; ++s) seen.insert(ce::pairAt(static_cast<uint64_t>(s)));
    for (uint64_t n = 0; n < 5; ++n)
        for (uint64_t m = 0; m < 5; ++m)
            if (!seen.count({n, m})) out.failures++;
}

void suiteCongruence(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    using namespace diagram;
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        // A consistent fact soup must be order-independent.
        std::vector<AtomicFact> facts;
        int n = 4 + static_cast<int>(rng.below(3));
        for (int i = 0; i < n; ++i)
            facts.push_back(AtomicFact::rel(rng.chance(1, 2), "G",
                                            {static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4))}));
        auto tryBuild = [&](const std::vector<AtomicFact>& fs) -> std::optional<std::set<AtomicFact>> {
            StagePresentation p(Signature::undirectedGraph());
            try {
                for (const auto& f : fs) p.assertFact(f);
            } catch (const Error&) {
                return std::nullopt;
            }
            return p.facts();
        };
        auto a = tryBuild(facts);
        std::vector<AtomicFact> shuffled = facts;
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        auto b = tryBuild(shuffled);
        if (a.has_value() != b.has_value()) out.failures++;
        else if (a && *a != *b) out.failures++;
    }
}

void suiteIso(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    using namespace diagram;
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Digraph g = randomDigraph(rng, 6);
        auto A = FiniteStructure::fromDigraph(g);
        auto self = isoCheck(A, A);
        if (!self) {
            out.failures++;
            continue;
        }
        // permuted copy must be isomorphic
        std::vector<int> perm(static_cast<size_t>(g.n));
        for (int i = 0; i < g.n; ++i) perm[static_cast<size_t>(i)] = i;
        for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        Digraph h;
        h.n = g.n;
        for (auto& [a, b] : g.edges) h.edges.insert({perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)]});
        auto w = isoCheck(A, FiniteStructure::fromDigraph(h));
        if (!w) out.failures++;
    }
}

void suiteGraphRoundtrip(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Digraph g = randomDigraph(rng, 5);
        auto H = gcode::encodeFinite(g);
        Digraph back = gcode::decode(H);
        auto A = diagram::FiniteStructure::fromDigraph(g);
        auto B = diagram::FiniteStructure::fromDigraph(back);
        if (!diagram::isoCheck(A, B, {40})) out.failures++;
        if (g.loopCount() == 0 &&
            static_cast<size_t>(H.n) != 1 + static_cast<size_t>(g.n) + 8 * g.edges.size())
            out.failures++;
    }
}

void suiteMPolySqrt(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        MPoly g = randomPoly(rng, 3, 3, 8, 4);
        if (g.isZero()) continue;
        auto r = field::polySqrt(g * g);
        if (!r || (*r != g && *r != -g)) out.failures++;
        MPoly spoiler = (g * g) * (MPoly::var(0) + MPoly::var(1));
        if (field::polySqrt(spoiler)) out.failures++;
    }
}

void suiteSquareTest(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        RatFunc g = randomRatFunc(rng, 3, 3, 8);
        if (g.isZero()) continue;
        auto r = field::squareTest(g * g);
        if (!r || (*r != g && *r != -g)) out.failures++;
        RatFunc spoiled = g * g * (RatFunc::var(0) + RatFunc::var(1));
        if (field::squareTest(spoiled)) out.failures++;
    }
}

void suiteRatFuncField(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        RatFunc a = randomRatFunc(rng, 3, 3, 6);
        RatFunc b = randomRatFunc(rng, 3, 3, 6);
        if ((a + b) - b != a) out.failures++;
        if (!b.isZero() && (a * b) / b != a) out.failures++;
        RatFunc c = randomRatFunc(rng, 2, 2, 4);
        if (a * (b + c) != a * b + a * c) out.failures++;
    }
}

void suiteTowerMembership(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Digraph g = randomDigraph(rng, 4);
        auto tower = std::make_shared<field::Tower>(field::fsEmbed(g));
        Digraph sym = g.symmetrized();
        for (int i = 0; i < g.n; ++i) {
            for (int j = i; j < g.n; ++j) {
                RatFunc d = RatFunc::var(i) + RatFunc::var(j);
                auto w = field::rootMembership(*tower, d);
                bool edge = sym.hasEdge(i, j);
                if (w.has_value() != edge) {
                    out.failures++;
                    continue;
                }
                if (w) {
                    // candidate identity, evaluated in tower arithmetic:
                    // (root / prod sqrt(d_i))^2 == d
                    auto z = field::TowerElement::radical(tower, w->mask, RatFunc::constant(Rat(1)));
                    auto y = field::TowerElement::base(tower, w->root) * z.inverse();
                    if (y * y != field::TowerElement::base(tower, d)) out.failures++;
                }
            }
        }
    }
}

void suiteFsRoundtrip(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Digraph g = randomDigraph(rng, 3);
        auto tower = field::fsEmbed(g);
        Digraph dec = field::fsDecode(tower, g.n);
        if (!(dec == g.symmetrized())) out.failures++;
    }
}

ce::CeSchedule randomEarlySchedule(SplitMix64& rng, int window) {
    // Entry stages at most the element index: attention is always served
    // before any fact can mention the marker.
    ce::CeSchedule w;
    for (int e = 0; e < window; ++e)
        if (rng.chance(1, 2)) w.entries.emplace_back(static_cast<uint64_t>(e), rng.below(static_cast<uint64_t>(e) + 1));
    return w;
}

void suiteVsDimension(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        int window = 6;
        auto w = randomEarlySchedule(rng, window);
        auto table = markers::buildVs(w, 120, window);
        int expected = window - static_cast<int>(w.support().size());
        if (markers::vsDimension(table, window) != expected) out.failures++;
        for (const auto& f : table.facts)
            if (markers::vecIsZero(markers::evalLinCombVec(f.lambda, table.images)) != f.isZero)
                out.failures++;
    }
}

void suiteAcfTrdeg(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        int window = 4;
        auto w = randomEarlySchedule(rng, window);
        auto table = markers::buildAcf(w, 90, window);
        int expected = window - static_cast<int>(w.support().size());
        if (markers::acfTrdeg(table, window) != expected) out.failures++;
        for (const auto& f : table.facts)
            if (markers::evalPolyComb(f.lambda, table.images).isZero() != f.isZero) out.failures++;
    }
}

void suiteOrderRoundtrip(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    using namespace rcf;
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        int n = 1 + static_cast<int>(rng.below(6));
        std::vector<int> chain(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) chain[static_cast<size_t>(i)] = i + 1;
        for (size_t i = chain.size(); i > 1; --i) std::swap(chain[i - 1], chain[rng.below(i)]);
        LinearOrder L = LinearOrder::fromChain(chain);
        auto p = OrderedPresentation::encode(L);
        if (!(decodeOrder(p) == L)) out.failures++;
        // invariance under positive scaling and powers
        OrderedPresentation q = p;
        for (int i = 0; i < n; ++i) {
            int scaleNum = 1 + static_cast<int>(rng.below(5));
            int power = 1 + static_cast<int>(rng.below(3));
            q.generators[static_cast<size_t>(i)] =
                RatFunc::constant(Rat(scaleNum, 2)) * RatFunc::var(i).pow(power);
        }
        if (!(decodeOrder(q) == L)) out.failures++;
    }
}

void suiteSignOracle(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    using namespace rcf;
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + static_cast<int>(rng.below(3));
        std::vector<int> chain(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) chain[static_cast<size_t>(i)] = i + 1;
        for (size_t i = chain.size(); i > 1; --i) std::swap(chain[i - 1], chain[rng.below(i)]);
        LinearOrder L = LinearOrder::fromChain(chain);
        auto p = OrderedPresentation::encode(L);
        RatFunc f = randomRatFunc(rng, n, 4, 8);
        int symbolic = sign(p, f);
        if (symbolic != numericSign(f, L, 0)) out.failures++;
        if (symbolic != numericSign(f, L, 1)) out.failures++;
    }
}

void suitePreceqOracle(SplitMix64& rng, int trials, SelftestResult::Suite& out) {
    using namespace rcf;
    out.trials = trials;
    int done = 0;
    int guard = 0;
    while (done < trials && guard++ < trials * 200) {
        int n = 2 + static_cast<int>(rng.below(3));
        std::vector<int> chain(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) chain[static_cast<size_t>(i)] = i + 1;
        for (size_t i = chain.size(); i > 1; --i) std::swap(chain[i - 1], chain[rng.below(i)]);
        LinearOrder L = LinearOrder::fromChain(chain);
        auto p = OrderedPresentation::encode(L);
        RatFunc f = randomRatFunc(rng, n, 2, 5);
        RatFunc g = randomRatFunc(rng, n, 2, 5);
        if (!isPositiveInfinite(p, f)) f = -f;
        if (!isPositiveInfinite(p, f)) continue;
        if (!isPositiveInfinite(p, g)) g = -g;
        if (!isPositiveInfinite(p, g)) continue;
        ++done;
        bool symbolic = preceq(p, f, g);
        // oracle: exhibit n <= 8 with f <= g^n, sign checked numerically;
        // degrees are capped at 2, so a true instance needs n <= 3
        bool numeric = false;
        for (int k = 1; k <= 8 && !numeric; ++k) {
            RatFunc h = g.pow(k) - f;
            if (h.isZero() || (numericSign(h, L, 0) >= 0 && numericSign(h, L, 1) >= 0)) numeric = true;
        }
        if (symbolic != numeric) out.failures++;
    }
    out.trials = done;
}

void suiteCReal(SplitMix64&, int trials, SelftestResult::Suite& out) {
    using namespace rcf;
    out.trials = trials;
    for (int i = 1; i <= std::min(trials, 6); ++i) {
        CReal a = CReal::expSqrtPrime(i);
        Interval prev = a.at(0);
        for (int p = 1; p <= 24; ++p) {
            Interval cur = a.at(p);
            if (cur.width() > ratPow2(-p)) out.failures++;
            if (cur.lo < prev.lo || cur.hi > prev.hi) out.failures++;
            prev = cur;
        }
    }
}

void suiteArchReplay(SplitMix64&, int trials, SelftestResult::Suite& out) {
    using namespace rcf;
    out.trials = trials;
    auto check = [&](const char* pred, int rows, uint64_t stages) {
        auto st = archEncode(ce::Pi03Predicate::byName(pred), 0, stages, rows);
        for (const auto& f : st.facts)
            if (atomTruth(f.atom, st.retired) != f.truth) out.failures++;
        for (const auto& r : st.retreats)
            for (size_t i = 0; i < r.factCount; ++i)
                if (atomTruth(st.facts[i].atom, r.retiredSnapshot) != st.facts[i].truth) out.failures++;
        return st;
    };
    auto a = check("always", 3, 120);
    for (int t = 0; t < 3; ++t)
        if (a.retreatCounts[static_cast<size_t>(t)] != 0) out.failures++;
    auto b = check("fail-at:1", 3, 120);
    if (b.retreatCounts[1] < 5) out.failures++;
}

} // namespace

bool SelftestResult::allPassed() const {
    for (const auto& s : suites)
        if (s.failures > 0) return false;
    return true;
}

std::string SelftestResult::textReport() const {
    std::ostringstream os;
    os << "selftest seed " << seed << "\n";
    for (const auto& s : suites) {
        os << "  " << (s.failures == 0 ? "PASS" : "FAIL") << "  " << s.name << " (" << s.trials
           << " trials";
        if (s.failures > 0) os << ", " << s.failures << " failures";
        os << ")";
        if (!s.note.empty()) os << " " << s.note;
        os << "\n";
    }
    os << (allPassed() ? "all suites passed" : "FAILURES PRESENT") << "\n";
    return os.str();
}

std::string SelftestResult::structuredReport() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
        nlohmann::ordered_json e;
        e["suite"] = s.name;
        e["trials"] = s.trials;
        e["failures"] = s.failures;
        e["status"] = s.failures == 0 ? "pass" : "fail";
        arr.push_back(e);
    }
    j["suites"] = arr;
    j["passed"] = allPassed();
    return j.dump(2) + "\n";
}

SelftestResult runSelftest(const SelftestConfig& cfg) {
    std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"pairing", suitePairing},
        {"congruence", suiteCongruence},
        {"iso", suiteIso},
        {"graph-roundtrip", suiteGraphRoundtrip},
        {"mpoly-sqrt", suiteMPolySqrt},
        {"square-test", suiteSquareTest},
        {"ratfunc-field", suiteRatFuncField},
        {"tower-membership", suiteTowerMembership},
        {"fs-roundtrip", suiteFsRoundtrip},
        {"vs-dimension", suiteVsDimension},
        {"acf-trdeg", suiteAcfTrdeg},
        {"order-roundtrip", suiteOrderRoundtrip},
        {"sign-oracle", suiteSignOracle},
        {"preceq-oracle", suitePreceqOracle},
        {"creal", suiteCReal},
        {"arch-replay", suiteArchReplay},
    };
    SelftestResult result;
    result.seed = cfg.seed;
    for (auto& [name, fn] : suites) {
        if (!cfg.onlySuite.empty() && cfg.onlySuite != name) continue;
        SelftestResult::Suite s;
        s.name = name;
        SplitMix64 rng(SplitMix64::mix(cfg.seed, name));
        fn(rng, cfg.trials, s);
        result.suites.push_back(std::move(s));
    }
    if (result.suites.empty()) fail(ErrorKind::BadInput, "unknown suite '" + cfg.onlySuite + "'");
    return result;
}

} // namespace ec
