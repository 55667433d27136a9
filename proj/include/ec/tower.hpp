#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ec/digraph.hpp"
#include "ec/ratfunc.hpp"

namespace ec::field {

// Multiquadratic extension Q(X1..Xn)(sqrt d1, ..., sqrt dk). Construction
// checks that every nonempty subset product of radicands is a non-square, so
// the extension has full degree 2^k and subset witnesses are unique.
class Tower {
public:
    static Tower make(int baseVars, std::vector<RatFunc> radicands, int radicandBound = 12);

    int baseVars() const { return baseVars_; }
    const std::vector<RatFunc>& radicands() const { return radicands_; }
    size_t size() const { return radicands_.size(); }

    std::string toJson() const;
    static Tower fromJson(const std::string& text, int radicandBound = 12);

private:
    Tower() = default;
    int baseVars_ = 0;
    std::vector<RatFunc> radicands_;
};

struct SubsetWitness {
    uint32_t mask;      // subset S of radicand indices (bit i = radicand i)
    RatFunc root;       // g with g^2 = d * prod_{i in S} d_i
};

// Decides sqrt(d) in the tower by the multiquadratic criterion: member iff
// some subset product d * prod_{i in S} d_i is a square in the base field.
std::optional<SubsetWitness> rootMembership(const Tower& t, const RatFunc& d);

// Element of the tower in normal form: sum over subsets S of
// coords[S] * prod_{i in S} sqrt(d_i).
class TowerElement {
public:
    explicit TowerElement(std::shared_ptr<const Tower> t) : tower_(std::move(t)) {}
    static TowerElement base(std::shared_ptr<const Tower> t, RatFunc f);
    static TowerElement radical(std::shared_ptr<const Tower> t, uint32_t mask, RatFunc coeff);

    const std::map<uint32_t, RatFunc>& coords() const { return coords_; }
    const Tower& tower() const { return *tower_; }
    bool isZero() const { return coords_.empty(); }

    friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
    friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
    friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
    TowerElement operator-() const;
    TowerElement inverse() const; // DivisionByZero on zero

    bool operator==(const TowerElement& o) const { return coords_ == o.coords_; }
    bool operator!=(const TowerElement& o) const { return !(*this == o); }

private:
    void add(uint32_t mask, const RatFunc& f);
    std::shared_ptr<const Tower> tower_;
    std::map<uint32_t, RatFunc> coords_;
};

// Graph-to-field embedding: one radicand X_i + X_j (1-based) per symmetrized
// edge {i, j}; loops contribute 2 X_i. Radicands in ascending (i, j) order.
Tower fsEmbed(const Digraph& g, int vertexBound = 12);

// Reads the graph back: edge {i, j} iff sqrt(X_i + X_j) lies in the tower.
Digraph fsDecode(const Tower& t, int n);

} // namespace ec::field
