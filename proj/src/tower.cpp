#include "ec/tower.hpp"

#include <json.hpp>

#include "ec/poly_text.hpp"

namespace ec::field {

namespace {

// Per-variable degree vector of the numerator; used for cheap non-square
// rejection of subset products (a square has even degree in every variable).
std::vector<uint32_t> numDegrees(const RatFunc& f, int nvars) {
    std::vector<uint32_t> d(static_cast<size_t>(nvars), 0);
    for (int v = 0; v < nvars; ++v) d[static_cast<size_t>(v)] = f.num().degreeIn(v);
    return d;
}

} // namespace

Tower Tower::make(int baseVars, std::vector<RatFunc> radicands, int radicandBound) {
    if (static_cast<int>(radicands.size()) > radicandBound)
        fail(ErrorKind::SizeExceeded, "tower with " + std::to_string(radicands.size()) +
                                          " radicands exceeds bound " + std::to_string(radicandBound));
    for (const auto& d : radicands)
        if (d.isZero()) fail(ErrorKind::BadInput, "zero radicand");
    for (size_t i = 0; i < radicands.size(); ++i)
        for (size_t j = i + 1; j < radicands.size(); ++j)
            if (radicands[i] == radicands[j]) fail(ErrorKind::BadInput, "duplicate radicand");

    // Multiplicative independence modulo squares: no nonempty subset product
    // may be a square, otherwise the extension degenerates.
    size_t k = radicands.size();
    int nvars = baseVars;
    for (const auto& r : radicands) nvars = std::max(nvars, r.num().varCount());
    bool allPoly = true;
    std::vector<std::vector<uint32_t>> degN(k);
    for (size_t i = 0; i < k; ++i) {
        if (!radicands[i].isPolynomial()) allPoly = false;
        degN[i] = numDegrees(radicands[i], nvars);
    }
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        if (allPoly) {
            bool parityOk = true;
            for (int v = 0; v < nvars && parityOk; ++v) {
                uint32_t e = 0;
                for (size_t i = 0; i < k; ++i)
                    if (mask & (1u << i)) e += degN[i][static_cast<size_t>(v)];
                if (e % 2 != 0) parityOk = false;
            }
            if (!parityOk) continue; // odd degree somewhere, cannot be a square
        }
        RatFunc prod = RatFunc::constant(Rat(1));
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) prod = prod * radicands[i];
        if (squareTest(prod))
            fail(ErrorKind::BadInput, "radicands are dependent modulo squares (subset mask " +
                                          std::to_string(mask) + ")");
    }
    Tower t;
    t.baseVars_ = baseVars;
    t.radicands_ = std::move(radicands);
    return t;
}

std::string Tower::toJson() const {
    nlohmann::ordered_json j;
    j["baseVars"] = baseVars_;
    auto rads = nlohmann::ordered_json::array();
    for (const auto& d : radicands_) {
        auto terms = nlohmann::ordered_json::array();
        for (const auto& [m, c] : d.num().terms()) {
            nlohmann::ordered_json t;
            t["c"] = ratStr(c);
            t["e"] = m;
            terms.push_back(t);
        }
        nlohmann::ordered_json rad;
        rad["num"] = terms;
        rad["text"] = d.str();
        if (!d.isPolynomial()) {
            auto dterms = nlohmann::ordered_json::array();
            for (const auto& [m, c] : d.den().terms()) {
                nlohmann::ordered_json t;
                t["c"] = ratStr(c);
                t["e"] = m;
                dterms.push_back(t);
            }
            rad["den"] = dterms;
        }
        rads.push_back(rad);
    }
    j["radicands"] = rads;
    return j.dump(2) + "\n";
}

namespace {

MPoly polyFromTerms(const nlohmann::json& terms) {
    MPoly p;
    for (const auto& t : terms) {
        Rat c = ratParse(t.at("c").get<std::string>());
        Monomial m = t.at("e").get<std::vector<uint32_t>>();
        p += MPoly::monomial(std::move(m), c);
    }
    return p;
}

} // namespace

Tower Tower::fromJson(const std::string& text, int radicandBound) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, std::string("bad tower json: ") + e.what());
    }
    try {
        int baseVars = j.at("baseVars").get<int>();
        std::vector<RatFunc> rads;
        for (const auto& rad : j.at("radicands")) {
            MPoly num = polyFromTerms(rad.at("num"));
            MPoly den = rad.contains("den") ? polyFromTerms(rad.at("den")) : MPoly::constant(Rat(1));
            rads.emplace_back(std::move(num), std::move(den));
        }
        return make(baseVars, std::move(rads), radicandBound);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, std::string("bad tower json: ") + e.what());
    }
}

std::optional<SubsetWitness> rootMembership(const Tower& t, const RatFunc& d) {
    if (d.isZero()) fail(ErrorKind::ZeroInput, "membership probe for sqrt(0)");
    size_t k = t.size();

    int nvars = t.baseVars();
    for (const auto& r : t.radicands()) nvars = std::max(nvars, r.num().varCount());
    nvars = std::max(nvars, d.num().varCount());

    // A subset product can only be a square if every per-variable numerator
    // degree is even; degrees of a product add, so this screens masks cheaply.
    // Denominators are handled the same way.
    std::vector<std::vector<uint32_t>> degN(k);
    for (size_t i = 0; i < k; ++i) degN[i] = numDegrees(t.radicands()[i], nvars);
    std::vector<uint32_t> dN = numDegrees(d, nvars);

    // The parity screen is only sound when no num/den cancellation can shift
    // degrees, i.e. everything in sight is polynomial.
    bool allPoly = d.isPolynomial();
    for (size_t i = 0; i < k && allPoly; ++i)
        if (!t.radicands()[i].isPolynomial()) allPoly = false;

    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (allPoly) {
            bool parityOk = true;
            for (int v = 0; v < nvars && parityOk; ++v) {
                uint32_t en = dN[static_cast<size_t>(v)];
                for (size_t i = 0; i < k; ++i)
                    if (mask & (1u << i)) en += degN[i][static_cast<size_t>(v)];
                if (en % 2 != 0) parityOk = false;
            }
            if (!parityOk) continue;
        }

        RatFunc prod = d;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) prod = prod * t.radicands()[i];
        auto root = squareTest(prod);
        if (root) return SubsetWitness{mask, *root};
    }
    return std::nullopt;
}

TowerElement TowerElement::base(std::shared_ptr<const Tower> t, RatFunc f) {
    TowerElement e(std::move(t));
    e.add(0, f);
    return e;
}

TowerElement TowerElement::radical(std::shared_ptr<const Tower> t, uint32_t mask, RatFunc coeff) {
    if (mask >= (1u << t->size())) fail(ErrorKind::BadInput, "radical mask out of range");
    TowerElement e(std::move(t));
    e.add(mask, coeff);
    return e;
}

void TowerElement::add(uint32_t mask, const RatFunc& f) {
    if (f.isZero()) return;
    auto it = coords_.find(mask);
    if (it == coords_.end()) {
        coords_.emplace(mask, f);
        return;
    }
    RatFunc sum = it->second + f;
    if (sum.isZero())
        coords_.erase(it);
    else
        it->second = sum;
}

TowerElement operator+(const TowerElement& a, const TowerElement& b) {
    TowerElement r = a;
    for (const auto& [m, f] : b.coords_) r.add(m, f);
    return r;
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) {
    TowerElement r = a;
    for (const auto& [m, f] : b.coords_) r.add(m, -f);
    return r;
}

TowerElement TowerElement::operator-() const {
    TowerElement r(tower_);
    for (const auto& [m, f] : coords_) r.coords_.emplace(m, -f);
    return r;
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    TowerElement r(a.tower_);
    const auto& rads = a.tower().radicands();
    for (const auto& [ma, fa] : a.coords_) {
        for (const auto& [mb, fb] : b.coords_) {
            // sqrt-products collapse on the intersection: the shared radicals
            // square away into base-field factors.
            uint32_t shared = ma & mb;
            RatFunc f = fa * fb;
            for (size_t i = 0; i < rads.size(); ++i)
                if (shared & (1u << i)) f = f * rads[i];
            r.add(ma ^ mb, f);
        }
    }
    return r;
}

TowerElement TowerElement::inverse() const {
    if (isZero()) fail(ErrorKind::DivisionByZero, "inverse of zero tower element");
    // Rationalize level by level: z = u + v*sqrt(d_k) with u, v in the
    // subtower, so 1/z = (u - v*sqrt(d_k)) / (u^2 - v^2 d_k).
    size_t k = tower_->size();
    int level = -1;
    for (const auto& [m, f] : coords_)
        for (size_t i = 0; i < k; ++i)
            if (m & (1u << i)) level = std::max(level, static_cast<int>(i));
    if (level < 0) {
        return TowerElement::base(tower_, coords_.begin()->second.inverse());
    }
    uint32_t bit = 1u << level;
    TowerElement u(tower_), v(tower_);
    for (const auto& [m, f] : coords_) {
        if (m & bit)
            v.add(m ^ bit, f);
        else
            u.add(m, f);
    }
    TowerElement conj = u - TowerElement::radical(tower_, bit, RatFunc::constant(Rat(1))) * v;
    TowerElement norm = u * u - v * v * TowerElement::base(tower_, tower_->radicands()[static_cast<size_t>(level)]);
    // norm lives strictly below `level`; recurse.
    return conj * norm.inverse();
}

Tower fsEmbed(const Digraph& g, int vertexBound) {
    if (g.n > vertexBound)
        fail(ErrorKind::SizeExceeded, "embedding bound " + std::to_string(vertexBound) +
                                          " exceeded by " + std::to_string(g.n) + " vertices");
    Digraph sym = g.symmetrized();
    std::vector<RatFunc> rads;
    for (const auto& [a, b] : sym.edges) {
        if (a > b) continue;
        rads.push_back(RatFunc::var(a) + RatFunc::var(b)); // X_{a+1} + X_{b+1}
    }
    return Tower::make(g.n, std::move(rads));
}

Digraph fsDecode(const Tower& t, int n) {
    Digraph g;
    g.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            RatFunc d = RatFunc::var(i) + RatFunc::var(j);
            if (rootMembership(t, d)) {
                g.edges.insert({i, j});
                g.edges.insert({j, i});
            }
        }
    }
    return g;
}

} // namespace ec::field
