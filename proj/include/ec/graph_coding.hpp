#pragma once

#include "ec/diagram.hpp"
#include "ec/digraph.hpp"

namespace ec::gcode {

// Directed edges are represented in the undirected code by a labeled chain:
// source image - x0 - triangle {x0,x1,x2} - bridge x2-x3 -
// pentagon cycle {x3,x4,x5,x6,x7} - x5 - target image.
// Node 1 is the hub every vertex image is connected to; fresh ids are the
// smallest unused naturals >= 2.
struct CodingState {
    Digraph input;                              // edge relation closed under identifications
    diagram::StagePresentation diagram{diagram::Signature::undirectedGraph()};
    std::vector<int> vertexImages;              // images in creation order
    std::map<int, int> imageOf;                 // input name -> image id
    std::set<std::pair<int, int>> coded;        // input pairs with a laid-down chain
    std::set<std::pair<int, int>> identifiedPairs;
    uint64_t step = 0;                          // global step counter, dispatched mod 6
    int nextFreshId = 2;
    uint64_t lastPositiveStep = 0;              // last step that added a positive/equality fact

    static CodingState start(const Digraph& g);
    void advance();                             // runs one step
};

// Functional single-step view of the machine.
CodingState encodeStep(CodingState st);

// Runs the machine to closure and completes the diagram closed-world.
// Output size is 1 + |V| + 8|E| when the input has no identified pairs.
diagram::FiniteStructure encodeFinite(const Digraph& g, int vertexBound = 64);

// Recovers the digraph from a code, up to isomorphism of the input.
// Throws NotACode when no consistent hub reading exists.
Digraph decode(const diagram::FiniteStructure& H);

} // namespace ec::gcode
