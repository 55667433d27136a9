#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "ec/error.hpp"

namespace ec {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int intAbs(const Int& n) { return n < 0 ? Int(-n) : n; }
inline Rat ratAbs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline int sgn(const Rat& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

// Exact integer square root, or nullopt when n is not a perfect square.
inline std::optional<Int> intSqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Exact rational square root (nonnegative), or nullopt.
inline std::optional<Rat> ratSqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto n = intSqrt(numerator(q));
    if (!n) return std::nullopt;
    auto d = intSqrt(denominator(q));
    if (!d) return std::nullopt;
    return Rat(*n, *d);
}

// Height of a rational: max(|numerator|, denominator).
inline Int heightOf(const Rat& q) {
    Int n = intAbs(numerator(q));
    Int d = denominator(q);
    return n > d ? n : d;
}

inline std::string ratStr(const Rat& q) { return q.str(); }

// Parses "p" or "p/q"; throws BadInput on garbage.
inline Rat ratParse(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        fail(ErrorKind::BadInput, "bad rational literal '" + s + "'");
    }
}

// 2^k as a rational, k may be negative.
inline Rat ratPow2(int k) {
    Int one = 1;
    if (k >= 0) return Rat(one << k);
    return Rat(one, one << (-k));
}

} // namespace ec
