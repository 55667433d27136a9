#include "ec/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace ec::field {

namespace {

void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

} // namespace

uint64_t totalDegree(const Monomial& m) {
    uint64_t d = 0;
    for (uint32_t e : m) d += e;
    return d;
}

int compareGradedLex(const Monomial& a, const Monomial& b) {
    uint64_t da = totalDegree(a), db = totalDegree(b);
    if (da != db) return da < db ? -1 : 1;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        uint32_t ea = i < a.size() ? a[i] : 0;
        uint32_t eb = i < b.size() ? b[i] : 0;
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
}

MPoly MPoly::var(int idx) {
    Monomial m(static_cast<size_t>(idx) + 1, 0);
    m[static_cast<size_t>(idx)] = 1;
    MPoly p;
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
}

MPoly MPoly::monomial(Monomial m, const Rat& c) {
    MPoly p;
    if (c != 0) {
        trim(m);
        p.terms_.emplace(std::move(m), c);
    }
    return p;
}

bool MPoly::isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat MPoly::constantValue() const {
    if (terms_.empty()) return Rat(0);
    return terms_.begin()->second;
}

int MPoly::varCount() const {
    size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return static_cast<int>(n);
}

uint64_t MPoly::degree() const {
    if (terms_.empty()) return 0;
    return totalDegree(terms_.begin()->first);
}

uint32_t MPoly::degreeIn(int v) const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_)
        if (static_cast<size_t>(v) < m.size()) d = std::max(d, m[static_cast<size_t>(v)]);
    return d;
}

int MPoly::lowestVar() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0 && (best < 0 || static_cast<int>(i) < best)) best = static_cast<int>(i);
    return best;
}

const Monomial& MPoly::leadingMonomial() const { return terms_.begin()->first; }
const Rat& MPoly::leadingCoeff() const { return terms_.begin()->second; }

Rat MPoly::coeff(const Monomial& m) const {
    Monomial key = m;
    trim(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::addTerm(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, Rat(-c));
    return *this;
}

MPoly MPoly::operator-() const {
    MPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rat(-c));
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.addTerm(m, ca * cb);
        }
    }
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

MPoly MPoly::scaled(const Rat& c) const {
    MPoly r;
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

MPoly MPoly::pow(uint32_t k) const {
    MPoly r = MPoly::constant(Rat(1));
    MPoly base = *this;
    while (k > 0) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

MPoly MPoly::derivative(int v) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
        if (static_cast<size_t>(v) >= m.size() || m[static_cast<size_t>(v)] == 0) continue;
        Monomial d = m;
        Rat coeff = c * Rat(d[static_cast<size_t>(v)]);
        d[static_cast<size_t>(v)] -= 1;
        trim(d);
        r.addTerm(d, coeff);
    }
    return r;
}

Rat MPoly::evalRat(const std::vector<Rat>& point) const {
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= point.size()) fail(ErrorKind::BadInput, "evaluation point has too few coordinates");
            Rat p(1);
            Rat base = point[i];
            for (uint32_t k = 0; k < m[i]; ++k) p *= base;
            t *= p;
        }
        acc += t;
    }
    return acc;
}

MPoly MPoly::coeffOfVarPow(int v, uint32_t k) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
        uint32_t e = static_cast<size_t>(v) < m.size() ? m[static_cast<size_t>(v)] : 0;
        if (e != k) continue;
        Monomial d = m;
        if (static_cast<size_t>(v) < d.size()) d[static_cast<size_t>(v)] = 0;
        trim(d);
        r.addTerm(d, c);
    }
    return r;
}

MPoly MPoly::timesVarPow(int v, uint32_t k) const {
    if (k == 0) return *this;
    MPoly r;
    for (const auto& [m, c] : terms_) {
        Monomial d = m;
        if (d.size() <= static_cast<size_t>(v)) d.resize(static_cast<size_t>(v) + 1, 0);
        d[static_cast<size_t>(v)] += k;
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

std::optional<MPoly> MPoly::divideExact(const MPoly& d) const {
    if (d.isZero()) return std::nullopt;
    MPoly q;
    MPoly r = *this;
    while (!r.isZero()) {
        const Monomial& lm = r.leadingMonomial();
        const Monomial& dm = d.leadingMonomial();
        Monomial qm(std::max(lm.size(), dm.size()), 0);
        for (size_t i = 0; i < qm.size(); ++i) {
            uint32_t a = i < lm.size() ? lm[i] : 0;
            uint32_t b = i < dm.size() ? dm[i] : 0;
            if (a < b) return std::nullopt;
            qm[i] = a - b;
        }
        trim(qm);
        Rat qc = r.leadingCoeff() / d.leadingCoeff();
        MPoly t = MPoly::monomial(qm, qc);
        q += t;
        r -= t * d;
    }
    return q;
}

Rat MPoly::content() const {
    if (terms_.empty()) return Rat(0);
    Int g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        g = boost::multiprecision::gcd(g, intAbs(ec::numerator(c)));
        l = boost::multiprecision::lcm(l, ec::denominator(c));
    }
    Rat mag(g, l);
    return leadingCoeff() < 0 ? Rat(-mag) : mag;
}

MPoly MPoly::primitivePart() const {
    if (terms_.empty()) return MPoly();
    Rat c = content();
    MPoly r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k / c);
    return r;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = ratAbs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool hasVars = !m.empty();
        if (!hasVars || a != 1) {
            os << a.str();
            if (hasVars) os << "*";
        }
        bool sep = false;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (sep) os << "*";
            os << "X" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
            sep = true;
        }
    }
    return os.str();
}

namespace {

// Pseudo-remainder of f by g in variable v (deg_v f >= deg_v g >= 1).
MPoly pseudoRem(MPoly f, const MPoly& g, int v) {
    uint32_t dg = g.degreeIn(v);
    MPoly lcg = g.coeffOfVarPow(v, dg);
    while (!f.isZero()) {
        uint32_t df = f.degreeIn(v);
        if (df < dg) break;
        MPoly lcf = f.coeffOfVarPow(v, df);
        // f := lcg*f - lcf*v^(df-dg)*g  kills the leading v-term
        f = lcg * f - (lcf * g).timesVarPow(v, df - dg);
    }
    return f;
}

MPoly gcdMany(const std::vector<MPoly>& ps) {
    MPoly g;
    for (const auto& p : ps) {
        g = gcd(g, p);
        if (!g.isZero() && g.isConstant()) break;
    }
    return g;
}

// gcd of the coefficients of p viewed as univariate in v.
MPoly contentIn(const MPoly& p, int v) {
    std::vector<MPoly> coeffs;
    uint32_t d = p.degreeIn(v);
    for (uint32_t k = 0; k <= d; ++k) {
        MPoly c = p.coeffOfVarPow(v, k);
        if (!c.isZero()) coeffs.push_back(std::move(c));
    }
    return gcdMany(coeffs);
}

} // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.isZero() && b.isZero()) return MPoly();
    if (a.isZero()) return b.primitivePart();
    if (b.isZero()) return a.primitivePart();
    MPoly A = a.primitivePart();
    MPoly B = b.primitivePart();
    if (A.isConstant() || B.isConstant()) return MPoly::constant(Rat(1));

    int v = A.lowestVar();
    int vb = B.lowestVar();
    if (vb >= 0 && (v < 0 || vb < v)) v = vb;

    if (!A.uses(v) || !B.uses(v)) {
        // v occurs in only one of them; the gcd is free of v.
        const MPoly& withV = A.uses(v) ? A : B;
        const MPoly& without = A.uses(v) ? B : A;
        return gcd(contentIn(withV, v), without);
    }

    MPoly contA = contentIn(A, v);
    MPoly contB = contentIn(B, v);
    MPoly cont = gcd(contA, contB);
    MPoly f = *A.divideExact(contA);
    MPoly g = *B.divideExact(contB);
    if (f.degreeIn(v) < g.degreeIn(v)) std::swap(f, g);

    // Primitive PRS in v.
    while (true) {
        MPoly r = pseudoRem(f, g, v);
        if (r.isZero()) break;
        if (r.degreeIn(v) == 0) {
            g = MPoly::constant(Rat(1));
            break;
        }
        MPoly c = contentIn(r, v);
        f = g;
        g = *r.divideExact(c);
    }
    MPoly result = cont * (*g.divideExact(contentIn(g, v)));
    return result.primitivePart();
}

std::optional<MPoly> polySqrt(const MPoly& p) {
    if (p.isZero()) return MPoly();
    if (p.leadingCoeff() < 0) return std::nullopt;
    if (p.isConstant()) {
        auto r = ratSqrt(p.constantValue());
        if (!r) return std::nullopt;
        return MPoly::constant(*r);
    }
    int v = p.lowestVar();
    uint32_t d = p.degreeIn(v);
    if (d % 2 != 0) return std::nullopt;
    if (d == 0) return std::nullopt; // unreachable: v occurs
    auto top = polySqrt(p.coeffOfVarPow(v, d));
    if (!top) return std::nullopt;
    uint32_t h = d / 2;

    MPoly r = top->timesVarPow(v, h);
    MPoly twice = top->scaled(Rat(2));
    for (uint32_t e = h; e-- > 0;) {
        MPoly residual = p - r * r;
        if (residual.isZero()) break;
        MPoly want = residual.coeffOfVarPow(v, h + e);
        if (want.isZero()) continue;
        auto t = want.divideExact(twice);
        if (!t) return std::nullopt;
        r += t->timesVarPow(v, e);
    }
    if (!(p - r * r).isZero()) return std::nullopt;
    if (r.leadingCoeff() < 0) r = -r;
    return r;
}

} // namespace ec::field
