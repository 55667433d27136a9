#pragma once

#include <string>
#include <vector>

#include "ec/ratfunc.hpp"

namespace ec::rcf {

// Finite linear order on {1..n}, stored as rank positions (0 = smallest).
struct LinearOrder {
    std::vector<int> rankOf1Based; // rankOf1Based[i-1] = position of i

    int size() const { return static_cast<int>(rankOf1Based.size()); }
    bool leq(int i, int j) const { return rankOf1Based[i - 1] <= rankOf1Based[j - 1]; }
    int rank(int i) const { return rankOf1Based[i - 1]; }

    // The chain smallest-to-largest, e.g. {2,1,3} for 2 < 1 < 3.
    std::vector<int> chain() const;
    static LinearOrder fromChain(const std::vector<int>& smallestToLargest);
    static LinearOrder parse(const std::string& text); // "2<1<3"
    std::string str() const;

    bool operator==(const LinearOrder& o) const { return rankOf1Based == o.rankOf1Based; }
};

// Rational function field Q(X1..Xn) ordered by the dominance induced by L:
// X_i exceeds every polynomial in the generators below it.
struct OrderedPresentation {
    LinearOrder order;
    std::vector<field::RatFunc> generators; // defaults to X_1..X_n

    static OrderedPresentation encode(const LinearOrder& l); // order_encode

    std::string toJson() const;
    static OrderedPresentation fromJson(const std::string& text);
};

// Sign of f under the dominance order: the sign of the coefficient of the
// dominant monomial (variables read in descending L-order), for numerator and
// denominator separately.
int sign(const OrderedPresentation& p, const field::RatFunc& f);

bool isPositiveInfinite(const OrderedPresentation& p, const field::RatFunc& f);

// The generator index (1-based) whose comparability class contains f.
// Throws NotInfinite unless f is positive infinite.
int comparabilityClassVar(const OrderedPresentation& p, const field::RatFunc& f);

// a preceq b iff a <= b^n for some n (power-closed comparability classes).
bool preceq(const OrderedPresentation& p, const field::RatFunc& f, const field::RatFunc& g);

// The literal "a^n <= b" reading, exposed for comparison; under it X^2 is not
// below X, so classes are not power-closed.
bool preceqPaperLiteral(const OrderedPresentation& p, const field::RatFunc& f,
                        const field::RatFunc& g);

// Reads the order back off the comparability classes of the presentation's
// generator elements. Throws NotACode when classes do not separate.
LinearOrder decodeOrder(const OrderedPresentation& p);

} // namespace ec::rcf
