#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they check.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ec/diagram.hpp"
#include "ec/mpoly.hpp"
#include "ec/ordered_field.hpp"
#include "ec/ratfunc.hpp"
#include "ec/rng.hpp"

namespace oracles {

using ec::Int;
using ec::Rat;

// ---------------------------------------------------------------------------
// Naive congruence closure over a small fact set: saturate equalities with
// union-find done by repeated scanning, then look for clashing literals.
// ---------------------------------------------------------------------------
inline bool naiveConsistent(const std::vector<ec::diagram::AtomicFact>& facts, bool symmetric) {
    std::map<int, int> rep;
    auto find = [&](int x) {
        while (rep.count(x) && rep[x] != x) x = rep[x];
        return x;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& f : facts) {
            if (!f.isEquality() || !f.positive) continue;
            int a = find(f.args[0]), b = find(f.args[1]);
            if (a != b) {
                rep[std::max(a, b)] = std::min(a, b);
                rep.emplace(std::min(a, b), std::min(a, b));
                changed = true;
            }
        }
    }
    auto canon = [&](const ec::diagram::AtomicFact& f) {
        std::vector<int> args;
        for (int a : f.args) args.push_back(find(a));
        if (symmetric && !f.isEquality() && args.size() == 2 && args[0] > args[1])
            std::swap(args[0], args[1]);
        return std::make_pair(f.symbol, args);
    };
    std::map<std::pair<std::string, std::vector<int>>, bool> truth;
    for (const auto& f : facts) {
        if (f.isEquality()) {
            if (!f.positive && find(f.args[0]) == find(f.args[1])) return false;
            continue;
        }
        auto key = canon(f);
        auto it = truth.find(key);
        if (it != truth.end() && it->second != f.positive) return false;
        truth.emplace(key, f.positive);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Univariate square detector used to cross-check multivariate squareness via
// random substitutions: substitute rationals for all variables but one and
// take an exact square root by coefficient recursion on the univariate image.
// A multivariate square stays square under every substitution; a non-square
// stays non-square under generic ones.
// ---------------------------------------------------------------------------
inline std::optional<std::vector<Rat>> univariateSqrt(const std::vector<Rat>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg >= 0 && coeffs[static_cast<size_t>(deg)] == 0) --deg;
    if (deg < 0) return std::vector<Rat>{};
    if (deg % 2 != 0) return std::nullopt;
    int h = deg / 2;
    auto top = ec::ratSqrt(coeffs[static_cast<size_t>(deg)]);
    if (!top) return std::nullopt;
    std::vector<Rat> g(static_cast<size_t>(h) + 1, Rat(0));
    g[static_cast<size_t>(h)] = *top;
    for (int k = h - 1; k >= 0; --k) {
        // coefficient of x^(h+k) in g^2 must match
        Rat acc(0);
        for (int i = k + 1; i <= h; ++i) {
            int j = h + k - i;
            if (j > h || j < 0) continue;
            if (j > k) acc += g[static_cast<size_t>(i)] * g[static_cast<size_t>(j)];
        }
        Rat want = coeffs[static_cast<size_t>(h + k)] - acc;
        g[static_cast<size_t>(k)] = want / (2 * *top);
    }
    // verify g^2 == p
    std::vector<Rat> sq(static_cast<size_t>(deg) + 1, Rat(0));
    for (int i = 0; i <= h; ++i)
        for (int j = 0; j <= h; ++j) sq[static_cast<size_t>(i + j)] += g[static_cast<size_t>(i)] * g[static_cast<size_t>(j)];
    for (int i = 0; i <= deg; ++i)
        if (sq[static_cast<size_t>(i)] != coeffs[static_cast<size_t>(i)]) return std::nullopt;
    return g;
}

// Substitution-based probabilistic squareness check of a RatFunc: collapses
// all variables but `keep` to fixed rationals and tests the univariate image.
inline std::optional<bool> squareUnderSubstitution(const ec::field::RatFunc& f, int keep,
                                                   const std::vector<Rat>& point) {
    using ec::field::MPoly;
    // write f = num/den; f square  =>  num*den square as a polynomial image
    MPoly probe = f.num() * f.den();
    uint32_t deg = probe.degreeIn(keep);
    std::vector<Rat> coeffs(deg + 1, Rat(0));
    for (uint32_t k = 0; k <= deg; ++k) {
        MPoly c = probe.coeffOfVarPow(keep, k);
        coeffs[k] = c.evalRat(point);
    }
    bool allZero = true;
    for (const auto& c : coeffs)
        if (c != 0) allZero = false;
    if (allZero) return std::nullopt; // degenerate substitution, try another
    return univariateSqrt(coeffs).has_value();
}

// ---------------------------------------------------------------------------
// Numeric sign oracle: exact evaluation at the towered substitution
// X(rank r) -> base^(radix^r). Faithful to the dominance order as long as the
// radix exceeds every per-variable degree and the base exceeds the coefficient
// mass; callers pick parameters accordingly.
// ---------------------------------------------------------------------------
inline Rat toweredValue(const ec::field::MPoly& p, const ec::rcf::LinearOrder& order, int base,
                        int radix) {
    std::vector<Rat> point;
    for (int v = 0; v < std::max(p.varCount(), order.size()); ++v) {
        int rank = v < order.size() ? order.rank(v + 1) : 0;
        Int e = 1;
        for (int k = 0; k < rank; ++k) e *= radix;
        Rat val(1);
        // base^(radix^rank) by repeated squaring over Int exponents
        Int left = e;
        Rat b(base);
        while (left > 0) {
            if ((left & 1) != 0) val *= b;
            b *= b;
            left >>= 1;
        }
        point.push_back(val);
    }
    return p.evalRat(point);
}

inline int numericSign(const ec::field::RatFunc& f, const ec::rcf::LinearOrder& order, int base,
                       int radix) {
    if (f.isZero()) return 0;
    Rat vn = toweredValue(f.num(), order, base, radix);
    Rat vd = toweredValue(f.den(), order, base, radix);
    return ec::sgn(vn) * ec::sgn(vd);
}

// Adaptive parameters that make the towered sign faithful for h.
inline std::pair<int, int> faithfulParams(const ec::field::RatFunc& h, int variant) {
    Rat mass(0);
    uint32_t deg = 0;
    for (const auto* poly : {&h.num(), &h.den()}) {
        for (const auto& [m, c] : poly->terms()) {
            mass += ec::ratAbs(c);
            for (uint32_t e : m) deg = std::max(deg, e);
        }
    }
    Int massCeil = ec::numerator(mass) / ec::denominator(mass) + 2;
    long massL = massCeil > 1000000 ? 1000000 : static_cast<long>(massCeil);
    int base = static_cast<int>(massL) * (variant == 0 ? 2 : 3) + 5;
    int radix = static_cast<int>(deg) + 2 + variant;
    return {base, radix};
}

} // namespace oracles
