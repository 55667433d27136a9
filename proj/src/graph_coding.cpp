#include "ec/graph_coding.hpp"

#include <algorithm>
#include <array>

#include "ec/cesim.hpp"

namespace ec::gcode {

namespace {

using diagram::AtomicFact;

constexpr int kHub = 1;

} // namespace

CodingState CodingState::start(const Digraph& g) {
    CodingState st;
    st.input = g.congruenceClosed();
    st.diagram.observeElement(kHub);
    return st;
}

namespace {

void layChain(CodingState& st, int srcImage, int dstImage) {
    std::array<int, 8> x{};
    for (int& id : x) id = st.nextFreshId++;
    auto edge = [&](int a, int b) {
        st.diagram.assertFact(AtomicFact::rel(true, "G", {a, b}));
    };
    edge(srcImage, x[0]);
    edge(x[0], x[1]);
    edge(x[1], x[2]);
    edge(x[0], x[2]);
    edge(x[2], x[3]);
    edge(x[3], x[4]);
    edge(x[4], x[5]);
    edge(x[5], x[6]);
    edge(x[6], x[7]);
    edge(x[3], x[7]);
    edge(x[5], dstImage);
    st.lastPositiveStep = st.step;
}

void ensureImage(CodingState& st, int name) {
    if (st.imageOf.count(name)) return;
    int id = st.nextFreshId++;
    st.vertexImages.push_back(id);
    st.imageOf[name] = id;
    st.diagram.observeElement(id);
    st.lastPositiveStep = st.step;
}

} // namespace

void CodingState::advance() {
    uint64_t s = step / 6;
    switch (step % 6) {
        case 0: {
            // Connect the hub to the first vertex image not yet wired to it.
            for (int x : vertexImages) {
                auto t = diagram.relationTruth("G", {kHub, x});
                if (!t) {
                    diagram.assertFact(AtomicFact::rel(true, "G", {kHub, x}));
                    lastPositiveStep = step;
                    break;
                }
            }
            break;
        }
        case 1: {
            auto [a64, b64] = ce::pairAt(s);
            int a = static_cast<int>(a64), b = static_cast<int>(b64);
            if (a < input.n && b < input.n) {
                ensureImage(*this, a);
                ensureImage(*this, b);
                if (input.hasEdge(a, b) && !coded.count({a, b})) {
                    layChain(*this, imageOf[a], imageOf[b]);
                    coded.insert({a, b});
                }
            }
            break;
        }
        case 2: {
            // Decide the first undecided atomic fact, in frozen ascending-id
            // order; hub-to-vertex pairs are decided positively, everything
            // else negatively.
            std::vector<int> ids(diagram.universe().begin(), diagram.universe().end());
            bool done = false;
            for (size_t i = 0; i < ids.size() && !done; ++i) {
                for (size_t j = i; j < ids.size() && !done; ++j) {
                    int x = ids[i], y = ids[j];
                    if (diagram.relationTruth("G", {x, y})) continue;
                    bool hubToVertex = false;
                    for (int v : vertexImages)
                        if ((x == kHub && y == v) || (y == kHub && x == v)) hubToVertex = true;
                    diagram.assertFact(AtomicFact::rel(hubToVertex, "G", {x, y}));
                    if (hubToVertex) lastPositiveStep = step;
                    done = true;
                }
            }
            break;
        }
        case 3: {
            auto [a64, b64] = ce::pairAt(s);
            int a = static_cast<int>(a64), b = static_cast<int>(b64);
            if (a < input.n && b < input.n && a != b && imageOf.count(a) && imageOf.count(b)) {
                int ia = imageOf[a], ib = imageOf[b];
                if (!diagram.equalityTruth(ia, ib)) {
                    bool same = input.sameVertex(a, b);
                    diagram.assertFact(AtomicFact::equality(same, ia, ib));
                    if (same) {
                        identifiedPairs.insert({a, b});
                        lastPositiveStep = step;
                    }
                }
            }
            break;
        }
        case 4: {
            // Identified pairs must share outgoing chains.
            for (const auto& [q, r] : identifiedPairs) {
                for (int t = 0; t < input.n && t < static_cast<int>(s); ++t) {
                    if (!imageOf.count(t)) continue;
                    if (input.hasEdge(q, t) && !coded.count({r, t})) {
                        layChain(*this, imageOf[r], imageOf[t]);
                        coded.insert({r, t});
                    }
                }
            }
            break;
        }
        case 5: {
            for (const auto& [q, r] : identifiedPairs) {
                for (int t = 0; t < input.n && t < static_cast<int>(s); ++t) {
                    if (!imageOf.count(t)) continue;
                    if (input.hasEdge(r, t) && !coded.count({q, t})) {
                        layChain(*this, imageOf[q], imageOf[t]);
                        coded.insert({q, t});
                    }
                }
            }
            break;
        }
    }
    ++step;
    diagram.setStage(step);
}

CodingState encodeStep(CodingState st) {
    st.advance();
    return st;
}

diagram::FiniteStructure encodeFinite(const Digraph& g, int vertexBound) {
    if (g.n > vertexBound)
        fail(ErrorKind::SizeExceeded, "input has " + std::to_string(g.n) + " vertices, bound is " +
                                          std::to_string(vertexBound));
    CodingState st = CodingState::start(g);
    uint64_t passes = g.n == 0 ? 1
                               : ce::pairIndex(static_cast<uint64_t>(g.n) - 1,
                                               static_cast<uint64_t>(g.n) - 1) +
                                     2;
    for (uint64_t s = 0; s < passes; ++s)
        for (int k = 0; k < 6; ++k) st.advance();
    // Keep passing until a full pass adds nothing positive.
    uint64_t idlePasses = 0;
    while (idlePasses < 2) {
        uint64_t before = st.lastPositiveStep;
        for (int k = 0; k < 6; ++k) st.advance();
        idlePasses = st.lastPositiveStep == before ? idlePasses + 1 : 0;
        if (st.step > passes * 6 + 100000)
            fail(ErrorKind::SizeExceeded, "coding machine failed to reach closure");
    }
    return diagram::FiniteStructure::completeFrom(st.diagram);
}

namespace {

struct Chain {
    std::array<int, 8> nodes; // x0..x7
    int y;
    int z;
};

struct DecodeView {
    const diagram::FiniteStructure& H;
    std::vector<std::vector<int>> nbr;

    explicit DecodeView(const diagram::FiniteStructure& h) : H(h), nbr(h.n) {
        for (int a = 0; a < h.n; ++a)
            for (int b = 0; b < h.n; ++b)
                if (h.adj[a][b] && a != b) nbr[a].push_back(b);
    }

    bool adj(int a, int b) const { return H.adj[a][b]; }
};

// Outside-of-set neighbors of v.
std::vector<int> outsideNeighbors(const DecodeView& V, int v, const std::vector<int>& inside) {
    std::vector<int> out;
    for (int w : V.nbr[v])
        if (std::find(inside.begin(), inside.end(), w) == inside.end()) out.push_back(w);
    return out;
}

// Chordless pentagons through d avoiding the triangle nodes; each is returned
// as {d, e, f, g, h} with cycle edges d-e, e-f, f-g, g-h, h-d.
std::vector<std::array<int, 5>> pentagonsThrough(const DecodeView& V, int d,
                                                 const std::vector<int>& triangle) {
    std::vector<std::array<int, 5>> found;
    auto banned = [&](int v) {
        return std::find(triangle.begin(), triangle.end(), v) != triangle.end();
    };
    const auto& nd = V.nbr[d];
    for (size_t i = 0; i < nd.size(); ++i) {
        for (size_t j = i + 1; j < nd.size(); ++j) {
            int e = nd[i], h = nd[j];
            if (banned(e) || banned(h) || V.adj(e, h)) continue;
            for (int f : V.nbr[e]) {
                if (f == d || f == h || banned(f) || V.adj(f, d)) continue;
                for (int g : V.nbr[h]) {
                    if (g == d || g == e || g == f || banned(g)) continue;
                    if (!V.adj(f, g)) continue;
                    if (V.adj(g, d) || V.adj(g, e) || V.adj(f, h)) continue; // chords
                    found.push_back({d, e, f, g, h});
                }
            }
        }
    }
    // The same cycle appears once per {e,h} choice; dedupe by node set.
    std::vector<std::array<int, 5>> uniq;
    std::vector<std::vector<int>> seen;
    for (auto& p : found) {
        std::vector<int> key(p.begin(), p.end());
        std::sort(key.begin(), key.end());
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(key);
            uniq.push_back(p);
        }
    }
    return uniq;
}

// Tries to read the triangle {a,b,c} as the triangle of a chain.
std::optional<Chain> readChain(const DecodeView& V, std::vector<int> tri) {
    // x1 is the interior triangle node with no outside neighbors.
    std::vector<int> inner;
    for (int v : tri)
        if (outsideNeighbors(V, v, tri).empty()) inner.push_back(v);
    if (inner.size() != 1) return std::nullopt;
    int x1 = inner[0];
    std::vector<int> rest;
    for (int v : tri)
        if (v != x1) rest.push_back(v);

    for (int pick = 0; pick < 2; ++pick) {
        int x0 = rest[pick], x2 = rest[1 - pick];
        auto outX0 = outsideNeighbors(V, x0, tri);
        auto outX2 = outsideNeighbors(V, x2, tri);
        if (outX0.size() != 1 || outX2.size() != 1) continue;
        int y = outX0[0];
        int d = outX2[0];
        auto pents = pentagonsThrough(V, d, tri);
        if (pents.size() != 1) continue;
        auto& p = pents[0];
        std::vector<int> gadget = {x0, x1, x2, p[0], p[1], p[2], p[3], p[4]};
        if (std::find(gadget.begin(), gadget.end(), y) != gadget.end()) continue;
        // Pentagon interior shape: the entry and the two distance-1 nodes
        // touch nothing outside the gadget; exactly one distance-2 node has a
        // single outside neighbor, the chain target.
        auto outOf = [&](int v) { return outsideNeighbors(V, v, gadget); };
        if (!outOf(p[0]).empty()) continue;
        if (!outOf(p[1]).empty() || !outOf(p[4]).empty()) continue;
        auto outF = outOf(p[2]);
        auto outG = outOf(p[3]);
        int x5 = -1, x6 = -1, z = -1;
        if (outF.size() == 1 && outG.empty()) {
            x5 = p[2];
            x6 = p[3];
            z = outF[0];
        } else if (outG.size() == 1 && outF.empty()) {
            x5 = p[3];
            x6 = p[2];
            z = outG[0];
        } else {
            continue;
        }
        // Orient x4 as the pentagon neighbor shared by x3 and x5.
        int x3 = p[0];
        int x4 = V.adj(p[1], x5) ? p[1] : p[4];
        int x7 = x4 == p[1] ? p[4] : p[1];
        if (!V.adj(x4, x5) || !V.adj(x3, x4) || !V.adj(x3, x7) || !V.adj(x6, x7))
            continue;
        Chain ch;
        ch.nodes = {x0, x1, x2, x3, x4, x5, x6, x7};
        ch.y = y;
        ch.z = z;
        return ch;
    }
    return std::nullopt;
}

} // namespace

Digraph decode(const diagram::FiniteStructure& H) {
    if (H.n == 0) fail(ErrorKind::NotACode, "empty structure");
    if (H.n == 1) return Digraph{0, {}, {}};
    DecodeView V(H);

    // All triangles, as sorted triples.
    std::vector<std::vector<int>> triangles;
    for (int a = 0; a < H.n; ++a)
        for (int b : V.nbr[a]) {
            if (b <= a) continue;
            for (int c : V.nbr[b]) {
                if (c <= b || !V.adj(a, c)) continue;
                triangles.push_back({a, b, c});
            }
        }

    std::vector<Chain> chains;
    for (auto& tri : triangles) {
        auto ch = readChain(V, tri);
        if (!ch) fail(ErrorKind::NotACode, "triangle without a readable chain");
        chains.push_back(*ch);
    }

    size_t undirectedEdges = 0;
    for (int a = 0; a < H.n; ++a)
        for (int b = a; b < H.n; ++b)
            if (V.adj(a, b)) ++undirectedEdges;

    if (chains.empty()) {
        // Star case: the hub is the unique maximum-degree node.
        if (H.n == 2) {
            // Ambiguous two-node star; both readings give one isolated vertex.
            if (!V.adj(0, 1) || undirectedEdges != 1)
                fail(ErrorKind::NotACode, "two nodes but not a star");
            return Digraph{1, {}, {}};
        }
        int bestDeg = -1;
        bool unique = false;
        for (int v = 0; v < H.n; ++v) {
            int d = static_cast<int>(V.nbr[v].size());
            if (d > bestDeg) {
                bestDeg = d;
                unique = true;
            } else if (d == bestDeg) {
                unique = false;
            }
        }
        if (!unique || bestDeg != H.n - 1 || undirectedEdges != static_cast<size_t>(H.n - 1))
            fail(ErrorKind::NotACode, "no chains and no unique star hub");
        return Digraph{H.n - 1, {}, {}};
    }

    // Hub: the unique node outside every gadget adjacent to every chain's
    // endpoints.
    std::vector<bool> inGadget(H.n, false);
    for (const auto& ch : chains)
        for (int v : ch.nodes) inGadget[v] = true;
    std::vector<int> hubs;
    for (int v = 0; v < H.n; ++v) {
        if (inGadget[v]) continue;
        bool ok = true;
        for (const auto& ch : chains) {
            if (v == ch.y || v == ch.z || !V.adj(v, ch.y) || !V.adj(v, ch.z)) {
                ok = false;
                break;
            }
        }
        if (ok) hubs.push_back(v);
    }
    if (hubs.size() != 1) fail(ErrorKind::NotACode, "hub is not unique");
    int hub = hubs[0];

    std::vector<int> vertices = V.nbr[hub];
    std::sort(vertices.begin(), vertices.end());
    for (int v : vertices)
        if (inGadget[v]) fail(ErrorKind::NotACode, "hub neighbor inside a gadget");

    std::map<int, int> indexOf;
    for (size_t i = 0; i < vertices.size(); ++i) indexOf[vertices[i]] = static_cast<int>(i);

    Digraph g;
    g.n = static_cast<int>(vertices.size());
    for (const auto& ch : chains) {
        auto iy = indexOf.find(ch.y);
        auto iz = indexOf.find(ch.z);
        if (iy == indexOf.end() || iz == indexOf.end())
            fail(ErrorKind::NotACode, "chain endpoint is not a vertex");
        g.edges.insert({iy->second, iz->second});
    }

    if (static_cast<size_t>(H.n) != 1 + vertices.size() + 8 * chains.size())
        fail(ErrorKind::NotACode, "node census mismatch");
    if (undirectedEdges != vertices.size() + 11 * chains.size())
        fail(ErrorKind::NotACode, "edge census mismatch");
    return g;
}

} // namespace ec::gcode
