#include "ec/creal.hpp"

#include <algorithm>

namespace ec::rcf {

Interval operator*(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

Interval Interval::pow(uint32_t k) const {
    Interval r = Interval::point(Rat(1));
    Interval base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

Interval Interval::intersect(const Interval& o) const {
    Interval r{std::max(lo, o.lo), std::min(hi, o.hi)};
    if (r.lo > r.hi) fail(ErrorKind::BadInput, "empty interval intersection");
    return r;
}

Rat dyadicFloor(const Rat& q, int bits) {
    Int scale = Int(1) << bits;
    Int n = numerator(q) * scale;
    Int d = denominator(q);
    Int quot = n / d;
    if (n < 0 && quot * d != n) quot -= 1;
    return Rat(quot, scale);
}

Rat dyadicCeil(const Rat& q, int bits) { return -dyadicFloor(-q, bits); }

Interval sqrtEnclosure(const Rat& x, int p) {
    if (x < 0) fail(ErrorKind::BadInput, "sqrt of a negative rational");
    if (x == 0) return Interval::point(Rat(0));
    Rat target = ratPow2(-p);
    // (x+1)/2 >= sqrt(x); Newton from above stays above.
    Rat u = (x + 1) / 2;
    if (u * u < x) u = x + 1; // x < 1 edge: still an upper bound
    int guard = p + 6;
    for (int iter = 0; iter < 256; ++iter) {
        Rat lo = x / u;
        if (u - lo <= target) return {lo, u};
        u = dyadicCeil((u + x / u) / 2, guard);
    }
    fail(ErrorKind::BadInput, "sqrt enclosure failed to converge");
}

Interval expEnclosure(const Rat& q, int p) {
    if (q < 0) fail(ErrorKind::BadInput, "exp enclosure expects q >= 0");
    Rat tol = ratPow2(-(p + 2));
    Rat term(1), sum(1);
    int n = 0;
    while (true) {
        ++n;
        term = term * q / n;
        sum += term;
        // Once n+2 >= 2q the tail is below twice the next term.
        if (Rat(n + 2) >= 2 * q && 2 * term * q / (n + 1) <= tol) break;
        if (n > 4096) fail(ErrorKind::BadInput, "exp enclosure failed to converge");
    }
    Rat rem = 2 * term * q / (n + 1);
    return {dyadicFloor(sum, p + 3), dyadicCeil(sum + rem, p + 3)};
}

CReal::CReal(std::function<Interval(int)> raw) : s_(std::make_shared<State>()) {
    s_->raw = std::move(raw);
}

Interval CReal::at(int p) const {
    if (p < 0) p = 0;
    auto it = s_->memo.find(p);
    if (it != s_->memo.end()) return it->second;
    Interval v = s_->raw(p);
    if (p > 0) v = v.intersect(at(p - 1)); // nesting by construction
    s_->memo.emplace(p, v);
    return v;
}

uint64_t nthPrime(int i) {
    if (i < 1) fail(ErrorKind::BadInput, "prime index is 1-based");
    uint64_t candidate = 1;
    for (int found = 0; found < i;) {
        ++candidate;
        bool prime = candidate >= 2;
        for (uint64_t d = 2; d * d <= candidate; ++d)
            if (candidate % d == 0) {
                prime = false;
                break;
            }
        if (prime) ++found;
    }
    return candidate;
}

CReal CReal::expSqrtPrime(int i) {
    uint64_t prime = nthPrime(i);
    return CReal([prime](int p) {
        // Rough size first, then enough input precision that the exp
        // derivative cannot inflate the width past 2^-p: the slope is at most
        // e^hi <= 2^(1.5 hi), so 1.5 hi + 5 extra input bits suffice.
        Interval rough = sqrtEnclosure(Rat(Int(prime)), 4);
        Rat budget = rough.hi * 3 / 2 + 5;
        int extra = static_cast<int>(numerator(budget) / denominator(budget)) + 1;
        Interval root = sqrtEnclosure(Rat(Int(prime)), p + extra);
        Interval lo = expEnclosure(root.lo, p + 2);
        Interval hiE = expEnclosure(root.hi, p + 2);
        return Interval{lo.lo, hiE.hi};
    });
}

Interval realApprox(int i, int p) { return CReal::expSqrtPrime(i).at(p); }

Rat simplestDyadicIn(const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) fail(ErrorKind::BadInput, "empty open interval");
    for (int bits = 0; bits < 4096; ++bits) {
        Int scale = Int(1) << bits;
        // Smallest k with k/scale > lo.
        Int n = numerator(lo) * scale;
        Int d = denominator(lo);
        Int k = n / d;
        while (Rat(k, scale) <= lo) ++k;
        if (Rat(k, scale) < hi) return Rat(k, scale);
    }
    fail(ErrorKind::BadInput, "no dyadic found in interval");
}

} // namespace ec::rcf
