#pragma once

#include <functional>
#include <map>
#include <memory>

#include "ec/rational.hpp"

namespace ec::rcf {

// Closed rational interval; the basic cell of the rigorous enclosures.
struct Interval {
    Rat lo, hi;

    Rat width() const { return hi - lo; }
    bool contains(const Rat& q) const { return lo <= q && q <= hi; }
    Rat mid() const { return (lo + hi) / 2; }

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b);
    Interval scaled(const Rat& c) const { return c >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c}; }
    Interval pow(uint32_t k) const;
    Interval intersect(const Interval& o) const;

    static Interval point(const Rat& q) { return {q, q}; }
};

// Round outward to denominators 2^bits; keeps the enclosed value enclosed.
Rat dyadicFloor(const Rat& q, int bits);
Rat dyadicCeil(const Rat& q, int bits);

// Enclosure of sqrt(x), x >= 0, width <= 2^-p (interval Newton from above).
Interval sqrtEnclosure(const Rat& x, int p);

// Enclosure of e^q for rational q >= 0, width <= 2^-p (Taylor with explicit
// remainder bound).
Interval expEnclosure(const Rat& q, int p);

// Nested shrinking approximator: at(p) has width <= 2^-p and at(p+1) is
// contained in at(p).
class CReal {
public:
    explicit CReal(std::function<Interval(int)> raw);
    Interval at(int p) const;

    // a_i = e^{sqrt(p_i)} with p_i the i-th prime, 1-based (a_1 = e^sqrt2).
    static CReal expSqrtPrime(int i);

private:
    struct State {
        std::function<Interval(int)> raw;
        std::map<int, Interval> memo;
    };
    std::shared_ptr<State> s_;
};

uint64_t nthPrime(int i); // 1-based: nthPrime(1) == 2

// The i-th member of the computable algebraically independent sequence.
Interval realApprox(int i, int p);

// The simplest dyadic rational strictly inside (lo, hi).
Rat simplestDyadicIn(const Rat& lo, const Rat& hi);

} // namespace ec::rcf
