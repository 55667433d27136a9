#include "ec/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace ec::diagram {

int Signature::arityOf(const std::string& sym) const {
    if (sym == "=") return 2;
    for (const auto& s : symbols)
        if (s.name == sym) return s.arity;
    fail(ErrorKind::BadInput, "unknown symbol '" + sym + "'");
}

std::string AtomicFact::line() const {
    std::ostringstream os;
    os << (positive ? "+" : "-") << " " << symbol;
    for (int a : args) os << " " << a;
    return os.str();
}

AtomicFact AtomicFact::parseLine(const std::string& text) {
    std::istringstream is(text);
    std::string pol, sym;
    if (!(is >> pol >> sym) || (pol != "+" && pol != "-"))
        fail(ErrorKind::BadInput, "bad fact line '" + text + "'");
    AtomicFact f;
    f.positive = pol == "+";
    f.symbol = sym;
    int a;
    while (is >> a) f.args.push_back(a);
    return f;
}

int StagePresentation::repMutable(int id) {
    auto it = parent_.find(id);
    if (it == parent_.end()) {
        parent_[id] = id;
        return id;
    }
    if (it->second == id) return id;
    int r = repMutable(it->second);
    parent_[id] = r;
    return r;
}

int StagePresentation::rep(int id) const {
    auto it = parent_.find(id);
    if (it == parent_.end()) return id;
    int cur = id;
    while (true) {
        auto jt = parent_.find(cur);
        if (jt == parent_.end() || jt->second == cur) return cur;
        cur = jt->second;
    }
}

void StagePresentation::checkWellFormed(const AtomicFact& f) const {
    int arity = sig_.arityOf(f.symbol);
    if (static_cast<int>(f.args.size()) != arity)
        fail(ErrorKind::BadInput, "arity mismatch in fact '" + f.line() + "'");
    for (int a : f.args)
        if (a < 0) fail(ErrorKind::BadInput, "negative element id in fact");
}

std::vector<int> StagePresentation::canonicalArgs(const AtomicFact& f) const {
    std::vector<int> args;
    args.reserve(f.args.size());
    for (int a : f.args) args.push_back(rep(a));
    if (!f.isEquality() && sig_.symmetricBinary() && args.size() == 2 && args[0] > args[1])
        std::swap(args[0], args[1]);
    return args;
}

void StagePresentation::rebuildIndex() {
    relIndex_.clear();
    for (const auto& f : facts_) {
        if (f.isEquality()) continue;
        auto key = std::make_pair(f.symbol, canonicalArgs(f));
        auto it = relIndex_.find(key);
        if (it != relIndex_.end() && it->second != f.positive)
            fail(ErrorKind::Contradiction, "congruence collapse clashes on '" + f.line() + "'");
        relIndex_.emplace(std::move(key), f.positive);
    }
    // Re-canonicalize recorded disequalities and recheck them.
    std::set<std::pair<int, int>> dis;
    for (auto [a, b] : disequal_) {
        int ra = rep(a), rb = rep(b);
        if (ra == rb) fail(ErrorKind::Contradiction, "identified elements declared distinct");
        dis.insert({std::min(ra, rb), std::max(ra, rb)});
    }
    disequal_ = std::move(dis);
}

std::optional<bool> StagePresentation::relationTruth(const std::string& sym,
                                                     const std::vector<int>& args) const {
    AtomicFact probe = AtomicFact::rel(true, sym, args);
    auto it = relIndex_.find(std::make_pair(sym, canonicalArgs(probe)));
    if (it == relIndex_.end()) return std::nullopt;
    return it->second;
}

std::optional<bool> StagePresentation::equalityTruth(int a, int b) const {
    int ra = rep(a), rb = rep(b);
    if (ra == rb) return true;
    if (disequal_.count({std::min(ra, rb), std::max(ra, rb)})) return false;
    return std::nullopt;
}

void StagePresentation::assertFact(const AtomicFact& f) {
    checkWellFormed(f);
    if (f.isEquality()) {
        int a = f.args[0], b = f.args[1];
        auto known = equalityTruth(a, b);
        if (f.positive) {
            if (known && !*known)
                fail(ErrorKind::Contradiction, "equality asserted for declared-distinct elements");
            int ra = repMutable(a), rb = repMutable(b);
            if (ra != rb) {
                // Collapsing classes can surface a clash; keep the strong guarantee.
                StagePresentation trial = *this;
                trial.parent_[std::max(ra, rb)] = std::min(ra, rb);
                trial.rebuildIndex(); // may throw Contradiction
                *this = std::move(trial);
            }
            universe_.insert(a);
            universe_.insert(b);
            facts_.insert(f);
            return;
        }
        if (known && *known) fail(ErrorKind::Contradiction, "disequality asserted for equal elements");
        universe_.insert(a);
        universe_.insert(b);
        facts_.insert(f);
        int ra = rep(a), rb = rep(b);
        disequal_.insert({std::min(ra, rb), std::max(ra, rb)});
        return;
    }

    auto truth = relationTruth(f.symbol, f.args);
    if (truth && *truth != f.positive)
        fail(ErrorKind::Contradiction, "negation of '" + f.line() + "' is derivable");
    for (int a : f.args) universe_.insert(a);
    facts_.insert(f);
    relIndex_.emplace(std::make_pair(f.symbol, canonicalArgs(f)), f.positive);
}

std::string StagePresentation::serialize() const {
    std::ostringstream os;
    for (const auto& f : facts_) os << f.line() << "\n";
    return os.str();
}

StagePresentation StagePresentation::deserialize(Signature sig, const std::string& text) {
    StagePresentation p(std::move(sig));
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        p.assertFact(AtomicFact::parseLine(line));
    }
    return p;
}

int FiniteStructure::degreeOut(int a) const {
    int d = 0;
    for (int b = 0; b < n; ++b)
        if (adj[a][b]) ++d;
    return d;
}

int FiniteStructure::degreeIn(int a) const {
    int d = 0;
    for (int b = 0; b < n; ++b)
        if (adj[b][a]) ++d;
    return d;
}

FiniteStructure FiniteStructure::completeFrom(const StagePresentation& p) {
    FiniteStructure s;
    s.sig = p.signature();
    std::map<int, int> compact; // representative -> compact id
    for (int id : p.universe()) compact.emplace(p.rep(id), 0);
    int k = 0;
    for (auto& [r, c] : compact) c = k++;
    s.n = k;
    s.originalIds.resize(k);
    for (const auto& [r, c] : compact) s.originalIds[c] = r;
    s.adj.assign(k, std::vector<bool>(k, false));
    const std::string& rel = s.sig.relationName();
    for (const auto& f : p.facts()) {
        if (!f.positive || f.symbol != rel) continue;
        int a = compact.at(p.rep(f.args[0]));
        int b = compact.at(p.rep(f.args[1]));
        s.adj[a][b] = true;
        if (s.sig.symmetricBinary()) s.adj[b][a] = true;
    }
    return s;
}

FiniteStructure FiniteStructure::fromDigraph(const Digraph& g) {
    FiniteStructure s;
    s.sig = Signature::directedGraph();
    s.n = g.n;
    s.originalIds.resize(g.n);
    for (int i = 0; i < g.n; ++i) s.originalIds[i] = i;
    s.adj.assign(g.n, std::vector<bool>(g.n, false));
    for (const auto& [a, b] : g.edges) s.adj[a][b] = true;
    return s;
}

FiniteStructure FiniteStructure::undirected(int n, const std::set<std::pair<int, int>>& edges) {
    FiniteStructure s;
    s.sig = Signature::undirectedGraph();
    s.n = n;
    s.originalIds.resize(n);
    for (int i = 0; i < n; ++i) s.originalIds[i] = i;
    s.adj.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges) {
        s.adj[a][b] = true;
        s.adj[b][a] = true;
    }
    return s;
}

Digraph FiniteStructure::toDigraph() const {
    Digraph g;
    g.n = n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (adj[a][b]) g.edges.insert({a, b});
    return g;
}

std::string FiniteStructure::toEdgeListText() const {
    std::ostringstream os;
    os << "vertices " << n << "\n";
    for (int a = 0; a < n; ++a)
        for (int b = sig.symmetricBinary() ? a : 0; b < n; ++b)
            if (adj[a][b]) os << a << " " << b << "\n";
    return os.str();
}

FiniteStructure FiniteStructure::undirectedFromEdgeListText(const std::string& text) {
    Digraph g = Digraph::fromEdgeListText(text);
    std::set<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges) edges.insert({std::min(a, b), std::max(a, b)});
    return undirected(g.n, edges);
}

} // namespace ec::diagram
