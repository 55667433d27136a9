#include <algorithm>
#include <numeric>

#include "ec/diagram.hpp"

namespace ec::diagram {

namespace {

// Iterated neighborhood refinement: start from (out-degree, in-degree, loop)
// and fold in sorted neighbor colors for a few rounds.
std::vector<uint64_t> refineColors(const FiniteStructure& g, int rounds) {
    int n = g.n;
    std::vector<uint64_t> color(n);
    for (int v = 0; v < n; ++v)
        color[v] = (static_cast<uint64_t>(g.degreeOut(v)) << 24) ^
                   (static_cast<uint64_t>(g.degreeIn(v)) << 8) ^ (g.adj[v][v] ? 1u : 0u);
    for (int r = 0; r < rounds; ++r) {
        std::vector<uint64_t> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<uint64_t> outs, ins;
            for (int w = 0; w < n; ++w) {
                if (g.adj[v][w]) outs.push_back(color[w]);
                if (g.adj[w][v]) ins.push_back(color[w]);
            }
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            uint64_t h = color[v] * 1099511628211ULL + 0x9e3779b9u;
            for (uint64_t c : outs) h = h * 1099511628211ULL ^ c;
            h ^= 0x5bd1e995;
            for (uint64_t c : ins) h = h * 1099511628211ULL ^ c;
            next[v] = h;
        }
        color = std::move(next);
    }
    return color;
}

struct Backtracker {
    const FiniteStructure& A;
    const FiniteStructure& B;
    std::vector<std::vector<int>> candidates; // per A-node, same-color B-nodes
    std::vector<int> order;                   // A-nodes, most constrained first
    std::vector<int> map;                     // A -> B or -1
    std::vector<bool> used;                   // B side

    bool consistent(int a, int b, int depth) const {
        for (int k = 0; k < depth; ++k) {
            int a2 = order[k];
            int b2 = map[a2];
            if (A.adj[a][a2] != B.adj[b][b2]) return false;
            if (A.adj[a2][a] != B.adj[b2][b]) return false;
        }
        return A.adj[a][a] == B.adj[b][b];
    }

    bool search(int depth) {
        if (depth == static_cast<int>(order.size())) return true;
        int a = order[depth];
        for (int b : candidates[a]) {
            if (used[b] || !consistent(a, b, depth)) continue;
            used[b] = true;
            map[a] = b;
            if (search(depth + 1)) return true;
            used[b] = false;
            map[a] = -1;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> isoCheck(const FiniteStructure& A, const FiniteStructure& B,
                                         IsoOptions opt) {
    if (A.n > opt.bound || B.n > opt.bound)
        fail(ErrorKind::SizeExceeded,
             "structure size " + std::to_string(std::max(A.n, B.n)) + " exceeds isomorphism bound " +
                 std::to_string(opt.bound));
    if (A.sig.kind != B.sig.kind) fail(ErrorKind::BadInput, "isomorphism check across signatures");
    if (A.n != B.n) return std::nullopt;
    if (A.n == 0) return std::vector<int>{};

    auto ca = refineColors(A, 3);
    auto cb = refineColors(B, 3);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt; // color census differs
    }

    Backtracker bt{A, B, {}, {}, std::vector<int>(A.n, -1), std::vector<bool>(B.n, false)};
    bt.candidates.resize(A.n);
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b)
            if (ca[a] == cb[b]) bt.candidates[a].push_back(b);

    bt.order.resize(A.n);
    std::iota(bt.order.begin(), bt.order.end(), 0);
    std::stable_sort(bt.order.begin(), bt.order.end(), [&](int x, int y) {
        return bt.candidates[x].size() < bt.candidates[y].size();
    });

    if (!bt.search(0)) return std::nullopt;
    return bt.map;
}

} // namespace ec::diagram
