#include "ec/arch.hpp"

#include <algorithm>
#include <sstream>

#include "ec/markers.hpp"

namespace ec::rcf {

using field::Monomial;
using field::MPoly;

CReal rowTarget(int row) {
    static std::map<int, CReal> cache; // single-threaded construction, see module notes
    auto it = cache.find(row);
    if (it == cache.end()) it = cache.emplace(row, CReal::expSqrtPrime(row + 1)).first;
    return it->second;
}

MPoly archSubstitute(const MPoly& atomPoly, const std::map<std::pair<int, int>, Rat>& retired) {
    MPoly out;
    for (const auto& [mono, coeff] : atomPoly.terms()) {
        Rat c = coeff;
        Monomial rowMono;
        for (size_t v = 0; v < mono.size(); ++v) {
            if (mono[v] == 0) continue;
            auto [row, cand] = unflattenConstant(static_cast<int>(v));
            auto it = retired.find({row, cand});
            if (it != retired.end()) {
                Rat p(1);
                for (uint32_t k = 0; k < mono[v]; ++k) p *= it->second;
                c *= p;
            } else {
                if (rowMono.size() <= static_cast<size_t>(row)) rowMono.resize(static_cast<size_t>(row) + 1, 0);
                rowMono[static_cast<size_t>(row)] += mono[v];
            }
        }
        out += MPoly::monomial(std::move(rowMono), c);
    }
    return out;
}

namespace {

Interval evalRowPoly(const MPoly& q, int prec) {
    Interval acc = Interval::point(Rat(0));
    for (const auto& [mono, coeff] : q.terms()) {
        Interval term = Interval::point(coeff);
        for (size_t v = 0; v < mono.size(); ++v) {
            if (mono[v] == 0) continue;
            term = term * rowTarget(static_cast<int>(v)).at(prec).pow(mono[v]);
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace

int signOfRowPoly(const MPoly& q) {
    if (q.isZero()) return 0;
    if (q.isConstant()) return sgn(q.constantValue());
    // Nonzero by algebraic independence of the targets; refine until the
    // interval separates from zero.
    for (int prec = 8; prec <= 512; prec *= 2) {
        Interval v = evalRowPoly(q, prec);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
    }
    fail(ErrorKind::BadInput, "sign refinement exhausted on " + q.str());
}

bool atomTruth(const ArchAtom& atom, const std::map<std::pair<int, int>, Rat>& retired) {
    MPoly q = archSubstitute(atom.poly, retired);
    if (atom.rel == Rel::Eq) return q.isZero();
    return q.isZero() || signOfRowPoly(q) < 0;
}

namespace {

struct ArchRunner {
    ArchState st;
    ce::Pi03Predicate pred;
    std::vector<ArchAtom> stream;
    size_t nextAtom = 0;
    std::vector<std::vector<int>> factVars; // flattened vars mentioned per fact

    void ensureStream(size_t n) {
        if (stream.size() >= n) return;
        size_t want = std::max<size_t>(2 * n + 32, 64);
        // Polynomials over flattened constants, filtered to probed rows.
        auto polys = markers::polyCombStream(want * 4);
        std::vector<ArchAtom> out;
        for (const auto& p : polys) {
            bool ok = true;
            for (int v = 0; v < p.varCount() && ok; ++v)
                if (p.uses(v) && unflattenConstant(v).first >= st.rows) ok = false;
            if (!ok) continue;
            out.push_back({p, Rel::Eq});
            out.push_back({p, Rel::Le});
            if (out.size() >= want) break;
        }
        stream = std::move(out);
    }

    std::vector<int> varsOf(const MPoly& p) const {
        std::vector<int> vars;
        for (int v = 0; v < p.varCount(); ++v)
            if (p.uses(v)) vars.push_back(v);
        return vars;
    }

    void evenStep(uint64_t step) {
        ensureStream(nextAtom + 1);
        if (nextAtom >= stream.size()) return;
        const ArchAtom& atom = stream[nextAtom++];
        bool truth = atomTruth(atom, st.retired);
        st.facts.push_back({atom, truth, step});
        factVars.push_back(varsOf(atom.poly));
        std::ostringstream os;
        os << "step " << step << ": P1 decides " << (truth ? "" : "not ") << atom.poly.str()
           << (atom.rel == Rel::Eq ? " = 0" : " <= 0");
        st.trace.push_back(os.str());
    }

    // Unretired row-t constants transitively linked to (t, m) through decided
    // facts; these share the value a_t, so they must retire together.
    std::vector<std::pair<int, int>> componentOf(int row, int cand) const {
        std::vector<std::pair<int, int>> comp{{row, cand}};
        std::vector<std::pair<int, int>> frontier = comp;
        while (!frontier.empty()) {
            auto [r0, c0] = frontier.back();
            frontier.pop_back();
            int flat = flattenConstant(r0, c0);
            for (size_t f = 0; f < factVars.size(); ++f) {
                if (std::find(factVars[f].begin(), factVars[f].end(), flat) == factVars[f].end())
                    continue;
                for (int v : factVars[f]) {
                    auto rc = unflattenConstant(v);
                    if (rc.first != row || st.retired.count(rc)) continue;
                    if (std::find(comp.begin(), comp.end(), rc) == comp.end()) {
                        comp.push_back(rc);
                        frontier.push_back(rc);
                    }
                }
            }
        }
        return comp;
    }

    bool consistentRetirement(const std::vector<std::pair<int, int>>& comp, const Rat& r) const {
        std::map<std::pair<int, int>, Rat> trial = st.retired;
        for (const auto& rc : comp) trial.emplace(rc, r);
        for (size_t f = 0; f < st.facts.size(); ++f) {
            bool touches = false;
            for (int v : factVars[f]) {
                auto rc = unflattenConstant(v);
                if (std::find(comp.begin(), comp.end(), rc) != comp.end()) touches = true;
            }
            if (!touches) continue;
            if (atomTruth(st.facts[f].atom, trial) != st.facts[f].truth) return false;
        }
        return true;
    }

    void retreat(int row, uint64_t step) {
        auto comp = componentOf(row, st.live[static_cast<size_t>(row)]);
        // Rational from a shrinking enclosure of the target: every decided
        // strict condition holds on a neighborhood of a(row), equalities hold
        // for any value by independence.
        Rat chosen;
        bool found = false;
        for (int prec = 6; prec <= 256 && !found; prec += 4) {
            Interval boxI = rowTarget(row).at(prec);
            Rat lo = boxI.lo, hi = boxI.hi;
            for (int tries = 0; tries < 3 && !found; ++tries) {
                Rat cand = tries == 0 ? simplestDyadicIn(lo, hi) : (lo + hi) / (2 + tries);
                if (!(lo < cand && cand < hi)) continue;
                if (consistentRetirement(comp, cand)) {
                    chosen = cand;
                    found = true;
                }
            }
        }
        if (!found)
            fail(ErrorKind::BadInput, "no consistent retreat rational for row " + std::to_string(row));
        for (const auto& rc : comp) st.retired.emplace(rc, chosen);
        int m = st.live[static_cast<size_t>(row)];
        int next = m + 1;
        while (st.retired.count({row, next})) ++next;
        st.live[static_cast<size_t>(row)] = next;
        st.retreatCounts[static_cast<size_t>(row)] += 1;
        st.retreats.push_back({row, comp, chosen, st.facts.size(), step, st.retired});
        std::ostringstream os;
        os << "step " << step << ": Q row " << row << " retreats " << comp.size()
           << " candidate(s) to " << chosen.str() << ", live marker now " << next;
        st.trace.push_back(os.str());
    }

    void oddStep(uint64_t step) {
        uint64_t s = (step - 1) / 2;
        for (int t = 0; t < st.rows && static_cast<uint64_t>(t) < s; ++t) {
            bool ok = true;
            for (uint64_t z = 0; z < s && ok; ++z)
                ok = pred.eval(static_cast<uint64_t>(t),
                               static_cast<uint64_t>(st.live[static_cast<size_t>(t)]), z, st.predParamN);
            if (!ok) retreat(t, step);
        }
    }
};

} // namespace

ArchState archEncode(const ce::Pi03Predicate& R, uint64_t n, uint64_t stages, int rows) {
    if (rows < 1 || rows > 16) fail(ErrorKind::BadInput, "row count out of range [1,16]");
    ArchRunner runner;
    runner.st.rows = rows;
    runner.st.predParamN = n;
    runner.st.live.assign(static_cast<size_t>(rows), 0);
    runner.st.retreatCounts.assign(static_cast<size_t>(rows), 0);
    runner.pred = R;
    for (uint64_t step = 0; step < stages; ++step) {
        if (step % 2 == 0)
            runner.evenStep(step);
        else
            runner.oddStep(step);
    }
    runner.st.steps = stages;
    return std::move(runner.st);
}

CutStatus cutStatus(const ArchState& st, int t, int precision) {
    uint64_t sFinal = st.steps == 0 ? 0 : (st.steps - 1) / 2;
    if (t < 0 || t >= st.rows || static_cast<uint64_t>(t) >= sFinal)
        fail(ErrorKind::UnknownRow, "row " + std::to_string(t) + " was not probed by this run");
    return {st.live[static_cast<size_t>(t)], st.retreatCounts[static_cast<size_t>(t)],
            rowTarget(t).at(precision)};
}

} // namespace ec::rcf
