#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ec/rational.hpp"

namespace ec::field {

// Exponent vector indexed by variable (0-based); trailing zeros are trimmed so
// the same monomial has one representation regardless of ambient variable count.
using Monomial = std::vector<uint32_t>;

uint64_t totalDegree(const Monomial& m);

// Graded lexicographic: higher total degree first, ties broken by the earlier
// variable with the larger exponent. Returns -1, 0, +1 for a <, =, > b.
int compareGradedLex(const Monomial& a, const Monomial& b);

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return compareGradedLex(a, b) > 0; }
};

// Sparse multivariate polynomial over the rationals in canonical graded-lex form.
class MPoly {
public:
    using TermMap = std::map<Monomial, Rat, MonomialGreater>;

    MPoly() = default;

    static MPoly constant(const Rat& c);
    static MPoly var(int idx);                                 // X_{idx+1}
    static MPoly monomial(Monomial m, const Rat& c);

    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    Rat constantValue() const; // 0 for the zero polynomial; requires isConstant otherwise

    const TermMap& terms() const { return terms_; }
    size_t termCount() const { return terms_.size(); }
    int varCount() const;                                      // 1 + max variable index used
    uint64_t degree() const;                                   // total degree; 0 for the zero polynomial
    uint32_t degreeIn(int v) const;
    bool uses(int v) const { return degreeIn(v) > 0; }
    int lowestVar() const;                                     // -1 when constant

    const Monomial& leadingMonomial() const;
    const Rat& leadingCoeff() const;
    Rat coeff(const Monomial& m) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly operator-() const;
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator*=(const MPoly& o);
    MPoly scaled(const Rat& c) const;
    MPoly pow(uint32_t k) const;

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(int v) const;
    Rat evalRat(const std::vector<Rat>& point) const;

    // Univariate view in variable v: coefficient of v^k with the v-exponent removed.
    MPoly coeffOfVarPow(int v, uint32_t k) const;
    MPoly timesVarPow(int v, uint32_t k) const;

    // Exact division: returns q with *this == q * d, or nullopt.
    std::optional<MPoly> divideExact(const MPoly& d) const;

    // p == content() * primitivePart(); the primitive part has coprime integer
    // coefficients and positive leading coefficient, the content carries sign.
    Rat content() const;
    MPoly primitivePart() const;

    std::string str() const;

private:
    void addTerm(const Monomial& m, const Rat& c);
    TermMap terms_;
};

// Primitive gcd with positive leading coefficient; gcd(0,0) == 0.
MPoly gcd(const MPoly& a, const MPoly& b);

// Exact polynomial square root with positive leading coefficient, or nullopt.
// Recurses as a univariate polynomial in the lowest occurring variable.
std::optional<MPoly> polySqrt(const MPoly& p);

} // namespace ec::field
