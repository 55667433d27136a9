#include "ec/digraph.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "ec/error.hpp"

namespace ec {

size_t Digraph::loopCount() const {
    size_t k = 0;
    for (const auto& [a, b] : edges)
        if (a == b) ++k;
    return k;
}

std::vector<int> Digraph::nameReps() const {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, b] : identified) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) rep[i] = find(i);
    return rep;
}

bool Digraph::sameVertex(int a, int b) const {
    auto rep = nameReps();
    return rep[a] == rep[b];
}

Digraph Digraph::congruenceClosed() const {
    auto rep = nameReps();
    std::set<std::pair<int, int>> byRep;
    for (const auto& [a, b] : edges) byRep.insert({rep[a], rep[b]});
    Digraph out = *this;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (byRep.count({rep[a], rep[b]})) out.edges.insert({a, b});
    return out;
}

Digraph Digraph::quotient() const {
    auto rep = nameReps();
    std::map<int, int> compact;
    for (int i = 0; i < n; ++i) compact.emplace(rep[i], 0);
    int k = 0;
    for (auto& [r, id] : compact) id = k++;
    Digraph out;
    out.n = k;
    for (const auto& [a, b] : edges) out.edges.insert({compact[rep[a]], compact[rep[b]]});
    return out;
}

Digraph Digraph::symmetrized() const {
    Digraph out = *this;
    for (const auto& [a, b] : edges) out.edges.insert({b, a});
    return out;
}

Digraph Digraph::fromEdgeListText(const std::string& text) {
    Digraph g;
    std::istringstream in(text);
    std::string line;
    bool sawHeader = false;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "#") continue;
        if (tok == "vertices") {
            if (!(ls >> g.n) || g.n < 0) fail(ErrorKind::BadInput, "bad vertices header");
            sawHeader = true;
            continue;
        }
        if (tok == "identify") {
            int a, b;
            if (!(ls >> a >> b)) fail(ErrorKind::BadInput, "bad identify line " + std::to_string(lineNo));
            if (a < 0 || b < 0 || a >= g.n || b >= g.n)
                fail(ErrorKind::BadInput, "identify names out of range on line " + std::to_string(lineNo));
            g.identified.emplace_back(a, b);
            continue;
        }
        int a, b;
        try {
            a = std::stoi(tok);
        } catch (const std::exception&) {
            fail(ErrorKind::BadInput, "bad edge line " + std::to_string(lineNo));
        }
        if (!(ls >> b)) fail(ErrorKind::BadInput, "bad edge line " + std::to_string(lineNo));
        if (!sawHeader) fail(ErrorKind::BadInput, "edge before 'vertices k' header");
        if (a < 0 || b < 0 || a >= g.n || b >= g.n)
            fail(ErrorKind::BadInput, "edge out of range on line " + std::to_string(lineNo));
        g.edges.insert({a, b});
    }
    if (!sawHeader) fail(ErrorKind::BadInput, "missing 'vertices k' header");
    return g;
}

std::string Digraph::toEdgeListText() const {
    std::ostringstream os;
    os << "vertices " << n << "\n";
    for (const auto& [a, b] : edges) os << a << " " << b << "\n";
    for (const auto& [a, b] : identified) os << "identify " << a << " " << b << "\n";
    return os.str();
}

} // namespace ec
