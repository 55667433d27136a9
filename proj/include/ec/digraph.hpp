#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ec {

// Finite directed graph on vertex names 0..n-1, loops allowed. A presentation
// may also declare pairs of names to denote the same vertex; the edge relation
// is closed under those identifications at construction of the coding run.
struct Digraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> identified;

    bool hasEdge(int a, int b) const { return edges.count({a, b}) > 0; }
    bool hasIdentifications() const { return !identified.empty(); }
    size_t edgeCount() const { return edges.size(); }
    size_t loopCount() const;

    // Representative of each name under the identification closure.
    std::vector<int> nameReps() const;
    bool sameVertex(int a, int b) const;

    // Edge relation closed under identifications (still on the original names).
    Digraph congruenceClosed() const;
    // Collapse identified names to representatives, renumbered 0..k-1.
    Digraph quotient() const;
    // Undirected view: edge set closed under swap, loops kept.
    Digraph symmetrized() const;

    bool operator==(const Digraph& o) const { return n == o.n && edges == o.edges; }

    // Edge-list text: header "vertices k", one "a b" line per edge, optional
    // "identify a b" lines.
    static Digraph fromEdgeListText(const std::string& text);
    std::string toEdgeListText() const;
};

} // namespace ec
