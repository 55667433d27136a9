#include "ec/ratfunc.hpp"

namespace ec::field {

RatFunc::RatFunc(MPoly n) : num_(std::move(n)) {}

RatFunc::RatFunc(MPoly n, MPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.isZero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.isZero()) {
        den_ = MPoly::constant(Rat(1));
        return;
    }
    Rat cn = num_.content();
    Rat cd = den_.content();
    MPoly n = num_.primitivePart();
    MPoly d = den_.primitivePart();
    MPoly g = gcd(n, d);
    if (!g.isConstant()) {
        n = *n.divideExact(g);
        d = *d.divideExact(g);
    }
    num_ = n.scaled(cn / cd);
    den_ = d;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.isZero()) fail(ErrorKind::DivisionByZero, "division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (isZero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc r = RatFunc::constant(Rat(1));
    RatFunc base = *this;
    unsigned e = static_cast<unsigned>(k);
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

bool RatFunc::operator<(const RatFunc& o) const {
    auto key = [](const RatFunc& f) { return f.str(); };
    return key(*this) < key(o);
}

RatFunc RatFunc::derivative(int v) const {
    MPoly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return RatFunc(std::move(n), den_ * den_);
}

Rat RatFunc::evalRat(const std::vector<Rat>& point) const {
    Rat d = den_.evalRat(point);
    if (d == 0) fail(ErrorKind::DivisionByZero, "denominator vanishes at evaluation point");
    return num_.evalRat(point) / d;
}

std::string RatFunc::str() const {
    if (den_.isConstant() && den_.constantValue() == 1) return num_.str();
    std::string n = num_.str();
    std::string d = den_.str();
    bool wrapN = num_.termCount() > 1;
    bool wrapD = den_.termCount() > 1;
    std::string r = wrapN ? "(" + n + ")" : n;
    r += "/";
    r += wrapD ? "(" + d + ")" : d;
    return r;
}

RatFunc ratfuncArith(const RatFunc& a, const RatFunc& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    fail(ErrorKind::BadInput, "unknown arithmetic operation");
}

std::optional<RatFunc> squareTest(const RatFunc& f) {
    if (f.isZero()) fail(ErrorKind::ZeroInput, "square test on zero");
    Rat c = f.num().content();
    if (c < 0) return std::nullopt;
    auto scale = ratSqrt(c);
    if (!scale) return std::nullopt;
    auto n = polySqrt(f.num().primitivePart());
    if (!n) return std::nullopt;
    auto d = polySqrt(f.den());
    if (!d) return std::nullopt;
    return RatFunc(n->scaled(*scale), *d);
}

} // namespace ec::field
