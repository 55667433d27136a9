#include "ec/ordered_field.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace ec::rcf {

using field::Monomial;
using field::MPoly;
using field::RatFunc;

std::vector<int> LinearOrder::chain() const {
    std::vector<int> c(rankOf1Based.size());
    for (size_t i = 0; i < rankOf1Based.size(); ++i) c[static_cast<size_t>(rankOf1Based[i])] = static_cast<int>(i) + 1;
    return c;
}

LinearOrder LinearOrder::fromChain(const std::vector<int>& smallestToLargest) {
    LinearOrder l;
    l.rankOf1Based.assign(smallestToLargest.size(), -1);
    for (size_t pos = 0; pos < smallestToLargest.size(); ++pos) {
        int v = smallestToLargest[pos];
        if (v < 1 || v > static_cast<int>(smallestToLargest.size()) || l.rankOf1Based[v - 1] != -1)
            fail(ErrorKind::BadInput, "chain is not a permutation of 1..n");
        l.rankOf1Based[v - 1] = static_cast<int>(pos);
    }
    return l;
}

LinearOrder LinearOrder::parse(const std::string& text) {
    std::vector<int> chain;
    std::string cur;
    for (char c : text) {
        if (c == '<') {
            if (cur.empty()) fail(ErrorKind::BadInput, "empty element in order '" + text + "'");
            chain.push_back(std::stoi(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(ErrorKind::BadInput, "bad character in order '" + text + "'");
            cur += c;
        }
    }
    if (cur.empty()) fail(ErrorKind::BadInput, "trailing '<' in order '" + text + "'");
    chain.push_back(std::stoi(cur));
    return fromChain(chain);
}

std::string LinearOrder::str() const {
    std::ostringstream os;
    auto c = chain();
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << "<";
        os << c[i];
    }
    return os.str();
}

OrderedPresentation OrderedPresentation::encode(const LinearOrder& l) {
    OrderedPresentation p;
    p.order = l;
    for (int i = 0; i < l.size(); ++i) p.generators.push_back(RatFunc::var(i));
    return p;
}

std::string OrderedPresentation::toJson() const {
    nlohmann::ordered_json j;
    j["order"] = order.str();
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : generators) {
        nlohmann::ordered_json e;
        auto dump = [](const MPoly& p) {
            auto terms = nlohmann::ordered_json::array();
            for (const auto& [m, c] : p.terms()) {
                nlohmann::ordered_json t;
                t["c"] = ratStr(c);
                t["e"] = m;
                terms.push_back(t);
            }
            return terms;
        };
        e["num"] = dump(g.num());
        e["den"] = dump(g.den());
        e["text"] = g.str();
        gens.push_back(e);
    }
    j["generators"] = gens;
    return j.dump(2) + "\n";
}

OrderedPresentation OrderedPresentation::fromJson(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, std::string("bad presentation json: ") + e.what());
    }
    try {
        OrderedPresentation p;
        p.order = LinearOrder::parse(j.at("order").get<std::string>());
        auto load = [](const nlohmann::json& terms) {
            MPoly poly;
            for (const auto& t : terms) {
                Rat c = ratParse(t.at("c").get<std::string>());
                Monomial m = t.at("e").get<std::vector<uint32_t>>();
                poly += MPoly::monomial(std::move(m), c);
            }
            return poly;
        };
        for (const auto& g : j.at("generators"))
            p.generators.emplace_back(load(g.at("num")), load(g.at("den")));
        if (p.generators.empty())
            for (int i = 0; i < p.order.size(); ++i) p.generators.push_back(RatFunc::var(i));
        return p;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, std::string("bad presentation json: ") + e.what());
    }
}

namespace {

// Compares monomials reading the variables in descending L-rank.
int cmpDominance(const LinearOrder& l, const Monomial& a, const Monomial& b) {
    auto chain = l.chain();
    for (int rank = l.size() - 1; rank >= 0; --rank) {
        int var = chain[static_cast<size_t>(rank)] - 1; // 0-based variable of this rank
        uint32_t ea = static_cast<size_t>(var) < a.size() ? a[static_cast<size_t>(var)] : 0;
        uint32_t eb = static_cast<size_t>(var) < b.size() ? b[static_cast<size_t>(var)] : 0;
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

Monomial dominantMonomial(const LinearOrder& l, const MPoly& p) {
    Monomial best;
    bool got = false;
    for (const auto& [m, c] : p.terms()) {
        if (!got || cmpDominance(l, m, best) > 0) {
            best = m;
            got = true;
        }
    }
    return best;
}

// Exponent vector of the dominant monomial of f = num/den, as num - den.
std::vector<int64_t> dominantExponent(const OrderedPresentation& p, const RatFunc& f) {
    Monomial mn = dominantMonomial(p.order, f.num());
    Monomial md = dominantMonomial(p.order, f.den());
    size_t n = std::max({mn.size(), md.size(), static_cast<size_t>(p.order.size())});
    std::vector<int64_t> d(n, 0);
    for (size_t i = 0; i < mn.size(); ++i) d[i] += mn[i];
    for (size_t i = 0; i < md.size(); ++i) d[i] -= md[i];
    return d;
}

} // namespace

int sign(const OrderedPresentation& p, const RatFunc& f) {
    if (f.isZero()) return 0;
    Rat cn = f.num().coeff(dominantMonomial(p.order, f.num()));
    Rat cd = f.den().coeff(dominantMonomial(p.order, f.den()));
    return sgn(cn) * sgn(cd);
}

bool isPositiveInfinite(const OrderedPresentation& p, const RatFunc& f) {
    if (f.isZero() || sign(p, f) <= 0) return false;
    auto d = dominantExponent(p, f);
    for (int rank = p.order.size() - 1; rank >= 0; --rank) {
        int var = p.order.chain()[static_cast<size_t>(rank)] - 1;
        int64_t e = static_cast<size_t>(var) < d.size() ? d[static_cast<size_t>(var)] : 0;
        if (e != 0) return e > 0;
    }
    return false; // dominant exponent zero: finite
}

int comparabilityClassVar(const OrderedPresentation& p, const RatFunc& f) {
    if (!isPositiveInfinite(p, f))
        fail(ErrorKind::NotInfinite, "element is not positive infinite: " + f.str());
    auto d = dominantExponent(p, f);
    for (int rank = p.order.size() - 1; rank >= 0; --rank) {
        int var = p.order.chain()[static_cast<size_t>(rank)] - 1;
        int64_t e = static_cast<size_t>(var) < d.size() ? d[static_cast<size_t>(var)] : 0;
        if (e != 0) return var + 1;
    }
    fail(ErrorKind::NotInfinite, "no dominant variable");
}

bool preceq(const OrderedPresentation& p, const RatFunc& f, const RatFunc& g) {
    int cf = comparabilityClassVar(p, f);
    int cg = comparabilityClassVar(p, g);
    return p.order.leq(cf, cg);
}

bool preceqPaperLiteral(const OrderedPresentation& p, const RatFunc& f, const RatFunc& g) {
    int cf = comparabilityClassVar(p, f);
    int cg = comparabilityClassVar(p, g);
    if (cf != cg) return p.order.leq(cf, cg);
    // Same class: search n with f^n <= g; beyond the exponent ratio the power
    // certainly dominates.
    auto df = dominantExponent(p, f);
    auto dg = dominantExponent(p, g);
    size_t v = static_cast<size_t>(cf - 1);
    int64_t ef = v < df.size() ? df[v] : 0;
    int64_t eg = v < dg.size() ? dg[v] : 0;
    int64_t nMax = ef > 0 ? eg / ef + 1 : 1;
    for (int64_t n = 1; n <= nMax; ++n) {
        if (sign(p, g - f.pow(static_cast<int>(n))) >= 0) return true;
    }
    return false;
}

LinearOrder decodeOrder(const OrderedPresentation& p) {
    size_t n = p.generators.size();
    std::vector<int> classVar(n);
    for (size_t i = 0; i < n; ++i) classVar[i] = comparabilityClassVar(p, p.generators[i]);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (classVar[i] == classVar[j])
                fail(ErrorKind::NotACode, "generators " + std::to_string(i + 1) + " and " +
                                              std::to_string(j + 1) + " share a comparability class");
    // Rank generator i by the L-rank of its class variable.
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return p.order.rank(classVar[a]) < p.order.rank(classVar[b]);
    });
    LinearOrder out;
    out.rankOf1Based.assign(n, 0);
    for (size_t pos = 0; pos < n; ++pos) out.rankOf1Based[idx[pos]] = static_cast<int>(pos);
    return out;
}

} // namespace ec::rcf
