#pragma once

#include <optional>
#include <string>

#include "ec/mpoly.hpp"

namespace ec::field {

// Exact rational function over Q, kept normalized: gcd(num, den) = 1 and the
// denominator is a primitive integer polynomial with positive leading
// coefficient (the rational scale lives in the numerator). Equality is
// structural on the canonical form.
class RatFunc {
public:
    RatFunc() = default;                       // zero
    RatFunc(MPoly n);                          // n / 1
    RatFunc(MPoly n, MPoly d);                 // throws DivisionByZero when d == 0

    static RatFunc constant(const Rat& c) { return RatFunc(MPoly::constant(c)); }
    static RatFunc var(int idx) { return RatFunc(MPoly::var(idx)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool isZero() const { return num_.isZero(); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    Rat constantValue() const { return num_.constantValue() / den_.constantValue(); }
    bool isPolynomial() const { return den_.isConstant(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b); // DivisionByZero
    RatFunc operator-() const;
    RatFunc inverse() const;                                      // DivisionByZero
    RatFunc pow(int k) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    bool operator<(const RatFunc& o) const; // arbitrary total order for container keys

    RatFunc derivative(int v) const;
    Rat evalRat(const std::vector<Rat>& point) const; // DivisionByZero if den vanishes

    std::string str() const;

private:
    void normalize();
    MPoly num_;
    MPoly den_ = MPoly::constant(Rat(1));
};

enum class ArithOp { Add, Sub, Mul, Div };

// The four-operation entry point used by the CLI; Div throws DivisionByZero.
RatFunc ratfuncArith(const RatFunc& a, const RatFunc& b, ArithOp op);

// Exact square root in Q(X...): succeeds iff numerator and denominator are
// squares up to a rational square scale. Throws ZeroInput on f == 0.
std::optional<RatFunc> squareTest(const RatFunc& f);

} // namespace ec::field
