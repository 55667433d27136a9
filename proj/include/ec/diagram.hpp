#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ec/digraph.hpp"
#include "ec/error.hpp"

namespace ec::diagram {

enum class SigKind { UndirectedGraph, DirectedGraph, Field, OrderedField, VectorSpace };

struct Signature {
    SigKind kind;
    struct Sym {
        std::string name;
        int arity;
    };
    std::vector<Sym> symbols;

    static Signature undirectedGraph() { return {SigKind::UndirectedGraph, {{"G", 2}}}; }
    static Signature directedGraph() { return {SigKind::DirectedGraph, {{"E", 2}}}; }

    int arityOf(const std::string& sym) const;
    // The single binary relation of a graph signature.
    const std::string& relationName() const { return symbols.front().name; }
    bool symmetricBinary() const { return kind == SigKind::UndirectedGraph; }
};

// One atomic (in)equality or relation fact over element ids.
struct AtomicFact {
    bool positive = true;
    std::string symbol; // relation symbol, or "=" for equality
    std::vector<int> args;

    static AtomicFact rel(bool pos, std::string sym, std::vector<int> a) {
        return {pos, std::move(sym), std::move(a)};
    }
    static AtomicFact equality(bool pos, int a, int b) { return {pos, "=", {a, b}}; }
    bool isEquality() const { return symbol == "="; }

    auto tie() const { return std::tie(symbol, args, positive); }
    bool operator<(const AtomicFact& o) const { return tie() < o.tie(); }
    bool operator==(const AtomicFact& o) const { return tie() == o.tie(); }

    std::string line() const;                       // "+ G 1 2"
    static AtomicFact parseLine(const std::string&);
};

// Stage-indexed growing set of atomic facts. Equality is handled by a
// union-find congruence closure: the set never contains a fact together with
// a derivable negation of it.
class StagePresentation {
public:
    explicit StagePresentation(Signature sig) : sig_(std::move(sig)) {}

    const Signature& signature() const { return sig_; }
    uint64_t stage() const { return stage_; }
    void setStage(uint64_t s) { stage_ = s; }

    const std::set<AtomicFact>& facts() const { return facts_; }
    const std::set<int>& universe() const { return universe_; }

    // Throws Contradiction when the negation of f is derivable.
    void assertFact(const AtomicFact& f);

    // Marks an element as part of the universe ahead of its first fact.
    void observeElement(int id) { universe_.insert(id); }

    // Truth of a relation atom modulo the equality congruence (and symmetry
    // for undirected signatures); nullopt when undecided.
    std::optional<bool> relationTruth(const std::string& sym, const std::vector<int>& args) const;
    std::optional<bool> equalityTruth(int a, int b) const;
    int rep(int id) const;

    std::string serialize() const;
    static StagePresentation deserialize(Signature sig, const std::string& text);

private:
    void checkWellFormed(const AtomicFact& f) const;
    std::vector<int> canonicalArgs(const AtomicFact& f) const;
    void rebuildIndex();
    int repMutable(int id);

    Signature sig_;
    uint64_t stage_ = 0;
    std::set<AtomicFact> facts_;
    std::set<int> universe_;
    mutable std::map<int, int> parent_;                        // union-find over ids
    std::set<std::pair<int, int>> disequal_;                   // by representatives
    std::map<std::pair<std::string, std::vector<int>>, bool> relIndex_; // canonical atom -> polarity
};

// Total finite structure with one binary relation, quotiented by declared
// equalities and completed closed-world.
struct FiniteStructure {
    Signature sig;
    int n = 0;
    std::vector<int> originalIds;          // compact id -> presentation id
    std::vector<std::vector<bool>> adj;

    bool related(int a, int b) const { return adj[a][b]; }
    int degreeOut(int a) const;
    int degreeIn(int a) const;

    static FiniteStructure completeFrom(const StagePresentation& p);
    static FiniteStructure fromDigraph(const Digraph& g);
    static FiniteStructure undirected(int n, const std::set<std::pair<int, int>>& edges);

    Digraph toDigraph() const; // adjacency as ordered pairs
    std::string toEdgeListText() const;
    static FiniteStructure undirectedFromEdgeListText(const std::string& text);
};

struct IsoOptions {
    int bound = 30;
};

// Backtracking isomorphism search with degree/neighborhood pruning.
// Returns a mapping A -> B or nullopt; throws SizeExceeded above the bound.
std::optional<std::vector<int>> isoCheck(const FiniteStructure& A, const FiniteStructure& B,
                                         IsoOptions opt = {});

} // namespace ec::diagram
