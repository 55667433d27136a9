#include "ec/markers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ec::markers {

namespace {

// The P1 eligibility throttle: a fact about lambda may be decided at even
// step 2s only when every marker it mentions has index < s/2.
bool eligible(const LinComb& lambda, uint64_t s) {
    for (const auto& [i, c] : lambda)
        if (static_cast<uint64_t>(i) * 2 >= s) return false;
    return true;
}

int maxMarkerOf(const field::MPoly& p) {
    return p.varCount() - 1;
}

bool eligiblePoly(const field::MPoly& lambda, uint64_t s) {
    int m = maxMarkerOf(lambda);
    return m < 0 || static_cast<uint64_t>(m) * 2 < s;
}

} // namespace

Rat evalLinComb(const LinComb& lambda, const std::map<int, Vec>& images, int basisIndex) {
    Rat acc(0);
    for (const auto& [marker, c] : lambda) {
        auto it = images.find(marker);
        if (it != images.end()) {
            auto jt = it->second.find(basisIndex);
            if (jt != it->second.end()) acc += c * jt->second;
        } else if (marker == basisIndex) {
            acc += c; // default image a_marker
        }
    }
    return acc;
}

Vec evalLinCombVec(const LinComb& lambda, const std::map<int, Vec>& images) {
    Vec acc;
    auto addInto = [&](const Vec& v, const Rat& c) {
        for (const auto& [b, x] : v) {
            Rat& slot = acc[b];
            slot += c * x;
            if (slot == 0) acc.erase(b);
        }
    };
    for (const auto& [marker, c] : lambda) {
        auto it = images.find(marker);
        if (it != images.end()) {
            addInto(it->second, c);
        } else {
            addInto(Vec{{marker, Rat(1)}}, c);
        }
    }
    return acc;
}

bool vecIsZero(const Vec& v) { return v.empty(); }

std::string linCombStr(const LinComb& lambda) {
    if (lambda.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : lambda) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Rat a = ratAbs(c);
        if (a != 1) os << a.str() << "*";
        os << "b" << i;
    }
    return os.str();
}

std::vector<LinComb> linCombStream(size_t count) {
    std::vector<LinComb> out;
    for (int grade = 1; out.size() < count && grade < 64; ++grade) {
        for (int k = 0; k < grade && out.size() < count; ++k) {
            int h = grade - k; // max |coefficient| is exactly h
            // Supports containing k, size <= 3, drawn from {0..k}.
            std::vector<std::vector<int>> supports;
            supports.push_back({k});
            for (int i = 0; i < k; ++i) supports.push_back({i, k});
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) supports.push_back({i, j, k});
            for (const auto& sup : supports) {
                size_t slots = sup.size();
                std::vector<int> tuple(slots, -h);
                while (true) {
                    bool allNonzero = true;
                    int maxAbs = 0, g = 0, firstNonzero = 0;
                    bool seen = false;
                    for (int c : tuple) {
                        if (c == 0) allNonzero = false;
                        maxAbs = std::max(maxAbs, std::abs(c));
                        g = std::gcd(g, std::abs(c));
                        if (!seen && c != 0) {
                            firstNonzero = c;
                            seen = true;
                        }
                    }
                    if (allNonzero && maxAbs == h && g == 1 && firstNonzero > 0) {
                        LinComb lc;
                        for (size_t i = 0; i < slots; ++i) lc[sup[i]] = Rat(tuple[i]);
                        out.push_back(std::move(lc));
                        if (out.size() >= count) break;
                    }
                    size_t pos = 0;
                    while (pos < slots && tuple[pos] == h) tuple[pos++] = -h;
                    if (pos == slots) break;
                    ++tuple[pos];
                }
                if (out.size() >= count) break;
            }
        }
    }
    return out;
}

namespace {

struct VsRunner {
    VsTable t;
    std::vector<LinComb> stream;
    std::set<size_t> decidedIdx;
    int window;

    void ensureStream(size_t n) {
        if (stream.size() < n) stream = linCombStream(std::max<size_t>(n, stream.size() * 2 + 64));
    }

    Vec imageOf(int marker) const { return t.imageOf(marker); }

    bool factHolds(const VsFact& f, const std::map<int, Vec>& images) const {
        return vecIsZero(evalLinCombVec(f.lambda, images)) == f.isZero;
    }

    bool consistentWith(int marker, const Vec& candidate) const {
        std::map<int, Vec> trial = t.images;
        trial[marker] = candidate;
        for (const auto& f : t.facts)
            if (!factHolds(f, trial)) return false;
        return true;
    }

    void evenStep(uint64_t step) {
        uint64_t s = step / 2;
        // First undecided eligible lambda in stream order.
        for (size_t idx = 0;; ++idx) {
            ensureStream(idx + 1);
            if (idx >= stream.size()) return; // stream exhausted (grade cap)
            if (decidedIdx.count(idx)) continue;
            const LinComb& lambda = stream[idx];
            if (!eligible(lambda, s)) {
                // Eligible lambdas cluster at the front of each grade; give
                // the scan generous room before declaring the stage idle.
                if (idx > 4 * s + 256) return;
                continue;
            }
            bool isZero = vecIsZero(evalLinCombVec(lambda, t.images));
            t.facts.push_back({lambda, isZero, step});
            decidedIdx.insert(idx);
            t.trace.push_back("step " + std::to_string(step) + ": P1 decides " +
                              linCombStr(lambda) + (isZero ? " = 0" : " != 0"));
            return;
        }
    }

    void oddStep(uint64_t step) {
        uint64_t s = (step - 1) / 2;
        auto w = t.schedule.at(s);
        int target = -1;
        for (uint64_t e : w) {
            int ei = static_cast<int>(e);
            if (!t.attended.count(ei)) {
                target = ei;
                break; // least pending index
            }
        }
        if (target < 0) return;

        // A positive fact with a nonzero coefficient on the marker pins it.
        bool pinned = false;
        for (const auto& f : t.facts) {
            if (!f.isZero) continue;
            auto it = f.lambda.find(target);
            if (it != f.lambda.end() && it->second != 0) {
                pinned = true;
                break;
            }
        }

        Vec chosen = imageOf(target);
        if (pinned) {
            t.trace.push_back("step " + std::to_string(step) + ": Q_" + std::to_string(target) +
                              " pinned by a positive fact; image kept");
        } else {
            bool placed = false;
            if (consistentWith(target, Vec{})) {
                chosen = Vec{};
                placed = true;
            }
            if (!placed) {
                // Reserve direction: a still-unattended marker, preferring
                // smaller indices below the target.
                int reserve = -1;
                for (int r = 0; r < target && reserve < 0; ++r)
                    if (!t.attended.count(r)) reserve = r;
                for (int r = target + 1; reserve < 0 && r < target + 1 + window + 64; ++r)
                    if (!t.attended.count(r)) reserve = r;
                if (reserve >= 0) {
                    Vec base = imageOf(reserve);
                    for (int k = 1; k <= static_cast<int>(t.facts.size()) + 2 && !placed; ++k) {
                        Vec cand;
                        for (const auto& [b, x] : base) cand[b] = Rat(k) * x;
                        if (consistentWith(target, cand)) {
                            chosen = cand;
                            placed = true;
                        }
                    }
                }
            }
            if (placed) {
                t.images[target] = chosen;
                t.trace.push_back("step " + std::to_string(step) + ": Q_" + std::to_string(target) +
                                  " moves b_" + std::to_string(target));
            } else {
                pinned = true;
                t.trace.push_back("step " + std::to_string(step) + ": Q_" + std::to_string(target) +
                                  " found no consistent retraction; image kept");
            }
        }
        t.attended.insert(target);
        t.moves.push_back({target, chosen, pinned, t.facts.size(), step, t.images});
    }
};

} // namespace

Vec VsTable::imageOf(int marker) const {
    auto it = images.find(marker);
    if (it != images.end()) return it->second;
    return Vec{{marker, Rat(1)}};
}

VsTable buildVs(const ce::CeSchedule& schedule, uint64_t stages, int window) {
    VsRunner r;
    r.t.schedule = schedule;
    r.window = window;
    for (int e = 0; e < window; ++e) r.t.images.emplace(e, Vec{{e, Rat(1)}});
    for (uint64_t step = 0; step < stages; ++step) {
        if (step % 2 == 0)
            r.evenStep(step);
        else
            r.oddStep(step);
    }
    r.t.steps = stages;
    return std::move(r.t);
}

int vsDimension(const VsTable& t, int m) {
    for (uint64_t e : t.schedule.support())
        if (e < static_cast<uint64_t>(m) && !t.attended.count(static_cast<int>(e)))
            fail(ErrorKind::NotStabilized,
                 "marker " + std::to_string(e) + " has pending attention below window " +
                     std::to_string(m));
    std::vector<Vec> rows;
    for (int e = 0; e < m; ++e) rows.push_back(t.imageOf(e));
    // Gaussian elimination over Q on sparse vectors.
    int rank = 0;
    std::map<int, Vec> pivots; // basis index -> normalized row
    for (Vec row : rows) {
        while (!row.empty()) {
            int lead = row.begin()->first;
            auto p = pivots.find(lead);
            if (p == pivots.end()) break;
            Rat c = row.begin()->second;
            for (const auto& [b, x] : p->second) {
                Rat& slot = row[b];
                slot -= c * x;
                if (slot == 0) row.erase(b);
            }
        }
        if (row.empty()) continue;
        Rat lead = row.begin()->second;
        Vec norm;
        for (const auto& [b, x] : row) norm[b] = x / lead;
        pivots[row.begin()->first] = std::move(norm);
        ++rank;
    }
    return rank;
}

bool probeDn(const VsTable& t, int n, int m) { return vsDimension(t, m) >= n; }

field::RatFunc evalPolyComb(const field::MPoly& lambda, const std::map<int, field::RatFunc>& images) {
    using field::RatFunc;
    RatFunc acc;
    for (const auto& [mono, c] : lambda.terms()) {
        RatFunc term = RatFunc::constant(c);
        for (size_t v = 0; v < mono.size(); ++v) {
            if (mono[v] == 0) continue;
            auto it = images.find(static_cast<int>(v));
            RatFunc base = it != images.end() ? it->second : RatFunc::var(static_cast<int>(v));
            term = term * base.pow(static_cast<int>(mono[v]));
        }
        acc = acc + term;
    }
    return acc;
}

std::vector<field::MPoly> polyCombStream(size_t count) {
    using field::MPoly;
    std::vector<MPoly> out;
    auto emit = [&](const MPoly& p) {
        if (p.isZero() || p.isConstant()) return;
        out.push_back(p);
    };
    for (int grade = 1; out.size() < count && grade < 40; ++grade) {
        for (int k = 0; k < grade && out.size() < count; ++k) {
            int h = grade - k;
            // Single support {k}: c2 b_k^2 + c1 b_k + c0.
            std::vector<std::vector<field::Monomial>> pools;
            std::vector<std::vector<int>> supports;
            supports.push_back({k});
            for (int i = 0; i < k; ++i) supports.push_back({i, k});
            for (const auto& sup : supports) {
                std::vector<field::Monomial> monos;
                monos.push_back({}); // constant term
                for (int v : sup) {
                    field::Monomial m1(static_cast<size_t>(v) + 1, 0);
                    m1[static_cast<size_t>(v)] = 1;
                    monos.push_back(m1);
                    field::Monomial m2(static_cast<size_t>(v) + 1, 0);
                    m2[static_cast<size_t>(v)] = 2;
                    monos.push_back(m2);
                }
                if (sup.size() == 2) {
                    field::Monomial m(static_cast<size_t>(std::max(sup[0], sup[1])) + 1, 0);
                    m[static_cast<size_t>(sup[0])] = 1;
                    m[static_cast<size_t>(sup[1])] = 1;
                    monos.push_back(m);
                }
                size_t slots = monos.size();
                std::vector<int> tuple(slots, -h);
                while (out.size() < count) {
                    int maxAbs = 0, g = 0;
                    bool usesAll = true;
                    for (size_t i = 0; i < slots; ++i) {
                        maxAbs = std::max(maxAbs, std::abs(tuple[i]));
                        g = std::gcd(g, std::abs(tuple[i]));
                    }
                    // Every support marker must occur, otherwise the lambda
                    // belongs to a smaller support's stream.
                    for (int v : sup) {
                        bool seen = false;
                        for (size_t i = 0; i < slots; ++i)
                            if (tuple[i] != 0 && static_cast<size_t>(v) < monos[i].size() &&
                                monos[i][static_cast<size_t>(v)] > 0)
                                seen = true;
                        if (!seen) usesAll = false;
                    }
                    if (maxAbs == h && g == 1 && usesAll) {
                        MPoly p;
                        for (size_t i = 0; i < slots; ++i)
                            if (tuple[i] != 0) p += MPoly::monomial(monos[i], Rat(tuple[i]));
                        if (!p.isZero() && p.leadingCoeff() > 0) emit(p);
                    }
                    size_t pos = 0;
                    while (pos < slots && tuple[pos] == h) tuple[pos++] = -h;
                    if (pos == slots) break;
                    ++tuple[pos];
                }
                if (out.size() >= count) break;
            }
        }
    }
    return out;
}

namespace {

struct AcfRunner {
    AcfTable t;
    std::vector<field::MPoly> stream;
    std::set<size_t> decidedIdx;
    int window;

    void ensureStream(size_t n) {
        if (stream.size() < n) stream = polyCombStream(std::max<size_t>(n, stream.size() * 2 + 64));
    }

    bool factHolds(const AcfFact& f, const std::map<int, field::RatFunc>& images) const {
        return evalPolyComb(f.lambda, images).isZero() == f.isZero;
    }

    bool consistentWith(int marker, const field::RatFunc& candidate) const {
        std::map<int, field::RatFunc> trial = t.images;
        trial[marker] = candidate;
        for (const auto& f : t.facts)
            if (!factHolds(f, trial)) return false;
        return true;
    }

    void evenStep(uint64_t step) {
        uint64_t s = step / 2;
        for (size_t idx = 0;; ++idx) {
            ensureStream(idx + 1);
            if (idx >= stream.size()) return;
            if (decidedIdx.count(idx)) continue;
            const field::MPoly& lambda = stream[idx];
            if (!eligiblePoly(lambda, s)) {
                if (idx > 4 * s + 256) return;
                continue;
            }
            bool isZero = evalPolyComb(lambda, t.images).isZero();
            t.facts.push_back({lambda, isZero, step});
            decidedIdx.insert(idx);
            t.trace.push_back("step " + std::to_string(step) + ": P1 decides " + lambda.str() +
                              (isZero ? " = 0" : " != 0"));
            return;
        }
    }

    void oddStep(uint64_t step) {
        uint64_t s = (step - 1) / 2;
        auto w = t.schedule.at(s);
        int target = -1;
        for (uint64_t e : w) {
            int ei = static_cast<int>(e);
            if (!t.attended.count(ei)) {
                target = ei;
                break;
            }
        }
        if (target < 0) return;

        // Replacement by a rational constant: the closure of any subset of the
        // field contains Q, and only finitely many constants can violate the
        // finitely many decided inequations.
        Rat chosen(0);
        bool placed = false;
        for (int c = 0; c <= static_cast<int>(t.facts.size()) * 3 + 2 && !placed; ++c) {
            field::RatFunc cand = field::RatFunc::constant(Rat(c));
            if (consistentWith(target, cand)) {
                chosen = Rat(c);
                placed = true;
            }
        }
        if (!placed)
            fail(ErrorKind::NotStabilized,
                 "no consistent constant replacement found for marker " + std::to_string(target));
        t.images[target] = field::RatFunc::constant(chosen);
        t.attended.insert(target);
        t.trace.push_back("step " + std::to_string(step) + ": Q_" + std::to_string(target) +
                          " moves b_" + std::to_string(target) + " to " + chosen.str());
        t.moves.push_back({target, chosen, t.facts.size(), step, t.images});
    }
};

} // namespace

field::RatFunc AcfTable::imageOf(int marker) const {
    auto it = images.find(marker);
    if (it != images.end()) return it->second;
    return field::RatFunc::var(marker);
}

AcfTable buildAcf(const ce::CeSchedule& schedule, uint64_t stages, int window) {
    AcfRunner r;
    r.t.schedule = schedule;
    r.window = window;
    for (int e = 0; e < window; ++e) r.t.images.emplace(e, field::RatFunc::var(e));
    for (uint64_t step = 0; step < stages; ++step) {
        if (step % 2 == 0)
            r.evenStep(step);
        else
            r.oddStep(step);
    }
    r.t.steps = stages;
    return std::move(r.t);
}

int acfTrdeg(const AcfTable& t, int m) {
    for (uint64_t e : t.schedule.support())
        if (e < static_cast<uint64_t>(m) && !t.attended.count(static_cast<int>(e)))
            fail(ErrorKind::NotStabilized,
                 "marker " + std::to_string(e) + " has pending attention below window " +
                     std::to_string(m));
    using field::RatFunc;
    std::vector<RatFunc> images;
    int nvars = 0;
    for (int e = 0; e < m; ++e) {
        RatFunc img = t.imageOf(e);
        nvars = std::max(nvars, img.num().varCount());
        nvars = std::max(nvars, img.den().varCount());
        images.push_back(std::move(img));
    }
    // Jacobian criterion: trdeg = rank of (d r_i / d T_j) over Q(T).
    std::vector<std::vector<RatFunc>> rows;
    for (const auto& img : images) {
        std::vector<RatFunc> row;
        for (int v = 0; v < nvars; ++v) row.push_back(img.derivative(v));
        rows.push_back(std::move(row));
    }
    int rank = 0;
    size_t nrows = rows.size();
    for (size_t col = 0; col < static_cast<size_t>(nvars) && rank < static_cast<int>(nrows); ++col) {
        size_t pivot = nrows;
        for (size_t r = static_cast<size_t>(rank); r < nrows; ++r)
            if (!rows[r][col].isZero()) {
                pivot = r;
                break;
            }
        if (pivot == nrows) continue;
        std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
        const RatFunc& lead = rows[static_cast<size_t>(rank)][col];
        for (size_t r = static_cast<size_t>(rank) + 1; r < nrows; ++r) {
            if (rows[r][col].isZero()) continue;
            RatFunc factor = rows[r][col] / lead;
            for (size_t c = col; c < static_cast<size_t>(nvars); ++c)
                rows[r][c] = rows[r][c] - factor * rows[static_cast<size_t>(rank)][c];
        }
        ++rank;
    }
    return rank;
}

bool probeTn(const AcfTable& t, int n, int m) { return acfTrdeg(t, m) >= n; }

} // namespace ec::markers
