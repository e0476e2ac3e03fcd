#include "dtile/exact.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "dtile/errors.hpp"

namespace dtile {

const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::infeasible: return "infeasible";
        case SearchStatus::exhausted: return "exhausted";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetHit {};

/// Node and wall-clock accounting shared by the searches.
class Meter {
public:
    explicit Meter(const SearchBudget& budget)
        : budget_(budget), start_(Clock::now()), deadline_(start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.time_limit_seconds))) {}

    void tick() {
        ++nodes_;
        if (nodes_ > budget_.node_limit) throw BudgetHit{};
        if ((nodes_ & 255U) == 0 && Clock::now() > deadline_) throw BudgetHit{};
    }

    SearchStats stats() const { return {nodes_, std::chrono::duration<double>(Clock::now() - start_).count()}; }

private:
    SearchBudget budget_;
    Clock::time_point start_;
    Clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
};

/// Is {p, q} (p < q, both in the sorted quad) the shared pair of two edges of the quad?
bool pair_shared(const Hypergraph3& g, const Quad& quad, Vertex p, Vertex q) {
    Vertex others[2];
    int k = 0;
    for (Vertex x : quad)
        if (x != p && x != q) others[k++] = x;
    return g.neighbours(p, q).test(others[0]) && g.neighbours(p, q).test(others[1]);
}

/**
 * Incremental exact-cover state over a quad catalog. A quad is live while all
 * four of its vertices are uncovered; `live_count[v]` counts live quads on v.
 */
class CoverState {
public:
    CoverState(int n, const VertexSet& scope, QuadCatalog catalog)
        : cat_(std::move(catalog)), live_(cat_.quads.size(), 1), live_count_(static_cast<std::size_t>(n), 0), uncovered_(scope) {
        for (std::size_t v = 0; v < cat_.incidence.size(); ++v) live_count_[v] = static_cast<int>(cat_.incidence[v].size());
        uncovered_count_ = uncovered_.count();
    }

    const QuadCatalog& catalog() const { return cat_; }
    const VertexSet& uncovered() const { return uncovered_; }
    int uncovered_count() const { return uncovered_count_; }
    int live_count(Vertex v) const { return live_count_[static_cast<std::size_t>(v)]; }
    bool live(std::uint32_t q) const { return live_[q] != 0; }

    std::size_t mark() const { return killed_.size(); }

    void cover(Vertex v) {
        uncovered_.reset(v);
        --uncovered_count_;
        covered_trail_.push_back(v);
        for (std::uint32_t q : cat_.incidence[static_cast<std::size_t>(v)]) {
            if (!live_[q]) continue;
            live_[q] = 0;
            killed_.push_back(q);
            for (Vertex x : cat_.quads[q]) --live_count_[static_cast<std::size_t>(x)];
        }
    }

    void take(std::uint32_t q) {
        for (Vertex x : cat_.quads[q]) cover(x);
    }

    /// Undo every cover() since `killed_mark`, given how many vertices were covered since.
    void undo(std::size_t killed_mark, int covered) {
        while (killed_.size() > killed_mark) {
            std::uint32_t q = killed_.back();
            killed_.pop_back();
            live_[q] = 1;
            for (Vertex x : cat_.quads[q]) ++live_count_[static_cast<std::size_t>(x)];
        }
        for (int i = 0; i < covered; ++i) {
            Vertex v = covered_trail_.back();
            covered_trail_.pop_back();
            uncovered_.set(v);
            ++uncovered_count_;
        }
    }

    /// Uncovered vertex with the fewest live quads (ties: smallest id), or -1.
    /// With `skip_dead`, vertices with no live quad are ignored.
    Vertex most_constrained(bool skip_dead) const {
        Vertex best = -1;
        int best_count = 0;
        uncovered_.for_each([&](Vertex v) {
            int c = live_count_[static_cast<std::size_t>(v)];
            if (skip_dead && c == 0) return;
            if (best < 0 || c < best_count) {
                best = v;
                best_count = c;
            }
        });
        return best;
    }

    /// Size of a hitting set of the live quads: the uncovered vertices left
    /// out of a greedy D-free set. Disjoint quads need distinct hitters, so
    /// this bounds the number of copies still placeable.
    int hitting_bound() {
        order_.clear();
        uncovered_.for_each([&](Vertex v) {
            if (live_count_[static_cast<std::size_t>(v)] > 0) order_.push_back(v);
        });
        std::sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
            int ca = live_count_[static_cast<std::size_t>(a)], cb = live_count_[static_cast<std::size_t>(b)];
            return ca != cb ? ca < cb : a < b;
        });
        in_free_.assign(live_count_.size(), 0);
        int kept = 0;
        for (Vertex v : order_) {
            bool closes = false;
            for (std::uint32_t q : cat_.incidence[static_cast<std::size_t>(v)]) {
                if (!live_[q]) continue;
                int inside = 0;
                for (Vertex x : cat_.quads[q]) inside += (x != v && in_free_[static_cast<std::size_t>(x)]);
                if (inside == 3) {
                    closes = true;
                    break;
                }
            }
            if (!closes) {
                in_free_[static_cast<std::size_t>(v)] = 1;
                ++kept;
            }
        }
        return static_cast<int>(order_.size()) - kept;
    }

    /// Live quads on v, in catalog order.
    std::vector<std::uint32_t> live_quads_on(Vertex v) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t q : cat_.incidence[static_cast<std::size_t>(v)])
            if (live_[q]) out.push_back(q);
        return out;
    }

private:
    QuadCatalog cat_;
    std::vector<std::uint8_t> live_;
    std::vector<int> live_count_;
    VertexSet uncovered_;
    int uncovered_count_ = 0;
    std::vector<std::uint32_t> killed_;
    std::vector<Vertex> covered_trail_;
    std::vector<Vertex> order_;
    std::vector<std::uint8_t> in_free_;
};

Tiling tiling_from_quads(const Hypergraph3& g, const QuadCatalog& cat, const std::vector<std::uint32_t>& chosen) {
    Tiling t;
    for (std::uint32_t q : chosen) t.copies.push_back(witness_on_quad(g, cat.quads[q]));
    t.normalize();
    return t;
}

class PerfectSearch {
public:
    PerfectSearch(CoverState& state, Meter& meter) : state_(state), meter_(meter) {}

    bool run() {
        meter_.tick();
        if (state_.uncovered_count() == 0) return true;
        Vertex v = state_.most_constrained(false);
        if (state_.live_count(v) == 0) return false;
        if (state_.hitting_bound() * 4 < state_.uncovered_count()) return false;
        for (std::uint32_t q : state_.live_quads_on(v)) {
            std::size_t mark = state_.mark();
            state_.take(q);
            chosen.push_back(q);
            if (run()) return true;
            chosen.pop_back();
            state_.undo(mark, 4);
        }
        return false;
    }

    std::vector<std::uint32_t> chosen;

private:
    CoverState& state_;
    Meter& meter_;
};

class MaxSearch {
public:
    MaxSearch(CoverState& state, Meter& meter) : state_(state), meter_(meter) {}

    void run() {
        meter_.tick();
        if (chosen_.size() > best.size()) best = chosen_;
        Vertex v = state_.most_constrained(true);
        if (v < 0) return;
        int active = 0;
        state_.uncovered().for_each([&](Vertex x) { active += state_.live_count(x) > 0; });
        const int bound = static_cast<int>(chosen_.size()) + std::min(active / 4, state_.hitting_bound());
        if (bound <= static_cast<int>(best.size())) return;
        for (std::uint32_t q : state_.live_quads_on(v)) {
            std::size_t mark = state_.mark();
            state_.take(q);
            chosen_.push_back(q);
            run();
            chosen_.pop_back();
            state_.undo(mark, 4);
        }
        // v stays uncovered
        std::size_t mark = state_.mark();
        state_.cover(v);
        run();
        state_.undo(mark, 1);
    }

    std::vector<std::uint32_t> best;

private:
    CoverState& state_;
    Meter& meter_;
    std::vector<std::uint32_t> chosen_;
};

}  // namespace

QuadCatalog quad_catalog(const Hypergraph3& g, const std::optional<VertexSet>& within) {
    const VertexSet scope = within ? *within : VertexSet::full(g.n());
    QuadCatalog cat;
    for (Vertex u = scope.first(); u >= 0; u = scope.next(u + 1))
        for (Vertex v = scope.next(u + 1); v >= 0; v = scope.next(v + 1)) {
            VertexSet nb = g.neighbours(u, v) & scope;
            for (Vertex w1 = nb.first(); w1 >= 0; w1 = nb.next(w1 + 1))
                for (Vertex w2 = nb.next(w1 + 1); w2 >= 0; w2 = nb.next(w2 + 1)) {
                    Quad q{u, v, w1, w2};
                    std::sort(q.begin(), q.end());
                    // emit once: only from the lexicographically first shared pair
                    bool earlier = false;
                    for (int i = 0; i < 4 && !earlier; ++i)
                        for (int j = i + 1; j < 4 && !earlier; ++j) {
                            std::array<Vertex, 2> p{q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]};
                            if (p >= std::array<Vertex, 2>{u, v}) continue;
                            earlier = pair_shared(g, q, p[0], p[1]);
                        }
                    if (!earlier) cat.quads.push_back(q);
                }
        }
    std::sort(cat.quads.begin(), cat.quads.end());
    cat.incidence.assign(static_cast<std::size_t>(g.n()), {});
    for (std::size_t i = 0; i < cat.quads.size(); ++i)
        for (Vertex x : cat.quads[i]) cat.incidence[static_cast<std::size_t>(x)].push_back(static_cast<std::uint32_t>(i));
    return cat;
}

PerfectTilingResult perfect_tiling_exact(const Hypergraph3& g, const SearchBudget& budget) {
    if (g.n() % 4 != 0) throw InputError("perfect tiling needs n divisible by 4, got " + std::to_string(g.n()));
    return perfect_tiling_exact(g, VertexSet::full(g.n()), budget);
}

PerfectTilingResult perfect_tiling_exact(const Hypergraph3& g, const VertexSet& within, const SearchBudget& budget) {
    PerfectTilingResult result;
    if (within.count() % 4 != 0) throw InputError("perfect tiling needs a vertex count divisible by 4");
    Meter meter(budget);
    CoverState state(g.n(), within, quad_catalog(g, within));
    PerfectSearch search(state, meter);
    try {
        if (search.run()) {
            result.status = SearchStatus::found;
            result.tiling = tiling_from_quads(g, state.catalog(), search.chosen);
        } else {
            result.status = SearchStatus::infeasible;
        }
    } catch (const BudgetHit&) {
        result.status = SearchStatus::exhausted;
    }
    result.stats = meter.stats();
    return result;
}

MaxTilingResult max_tiling_exact(const Hypergraph3& g, const SearchBudget& budget) {
    Meter meter(budget);
    CoverState state(g.n(), VertexSet::full(g.n()), quad_catalog(g));
    MaxSearch search(state, meter);
    MaxTilingResult result;
    try {
        search.run();
        result.optimal = true;
    } catch (const BudgetHit&) {
        if (budget.on_exhaust == SearchBudget::OnExhaust::fail) throw SearchExhausted("max_tiling_exact: budget exhausted");
    }
    result.tiling = tiling_from_quads(g, state.catalog(), search.best);
    result.stats = meter.stats();
    return result;
}

VertexSet greedy_D_free_set(const Hypergraph3& g) {
    std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    VertexSet s(g.n());
    for (Vertex v : order)
        if (!creates_D(g, s, v)) s.set(v);
    return s;
}

namespace {

class HittingSearch {
public:
    enum : std::uint8_t { undecided, in, out };

    HittingSearch(const QuadCatalog& cat, int n, Meter& meter) : cat_(cat), state_(static_cast<std::size_t>(n), undecided), meter_(meter) {}

    void seed(const VertexSet& s) {
        best_size = s.count();
        best = s;
    }

    void run() {
        meter_.tick();
        int open = 0;
        for (auto s : state_) open += s != out;
        if (open <= best_size) return;

        // live quad (no vertex out) with the fewest undecided vertices
        std::int64_t pick = -1;
        int pick_undecided = 5;
        for (std::size_t i = 0; i < cat_.quads.size(); ++i) {
            int u = 0;
            bool dead = false;
            for (Vertex x : cat_.quads[i]) {
                auto s = state_[static_cast<std::size_t>(x)];
                if (s == out) {
                    dead = true;
                    break;
                }
                u += s == undecided;
            }
            if (dead || u >= pick_undecided) continue;
            pick = static_cast<std::int64_t>(i);
            pick_undecided = u;
            if (u <= 1) break;
        }
        if (pick < 0) {
            best_size = open;
            best = VertexSet(static_cast<int>(state_.size()));
            for (std::size_t v = 0; v < state_.size(); ++v)
                if (state_[v] != out) best.set(static_cast<Vertex>(v));
            return;
        }
        if (pick_undecided == 0) return;  // `in` vertices already span D

        if (open - packing_bound() <= best_size) return;

        std::vector<Vertex> branch;
        for (Vertex x : cat_.quads[static_cast<std::size_t>(pick)])
            if (state_[static_cast<std::size_t>(x)] == undecided) branch.push_back(x);
        for (std::size_t i = 0; i < branch.size(); ++i) {
            state_[static_cast<std::size_t>(branch[i])] = out;
            for (std::size_t j = 0; j < i; ++j) state_[static_cast<std::size_t>(branch[j])] = in;
            run();
            for (std::size_t j = 0; j <= i; ++j) state_[static_cast<std::size_t>(branch[j])] = undecided;
        }
    }

    int best_size = 0;
    VertexSet best;

private:
    /// Live quads with pairwise disjoint undecided parts each force a distinct removal.
    int packing_bound() {
        used_.assign(state_.size(), 0);
        int forced = 0;
        for (const Quad& q : cat_.quads) {
            bool ok = true;
            for (Vertex x : q) {
                auto s = state_[static_cast<std::size_t>(x)];
                if (s == out || (s == undecided && used_[static_cast<std::size_t>(x)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            ++forced;
            for (Vertex x : q)
                if (state_[static_cast<std::size_t>(x)] == undecided) used_[static_cast<std::size_t>(x)] = 1;
        }
        return forced;
    }

    const QuadCatalog& cat_;
    std::vector<std::uint8_t> state_;
    std::vector<std::uint8_t> used_;
    Meter& meter_;
};

}  // namespace

DFreeSetResult max_D_free_set(const Hypergraph3& g, const SearchBudget& budget) {
    Meter meter(budget);
    QuadCatalog cat = quad_catalog(g);
    HittingSearch search(cat, g.n(), meter);
    search.seed(greedy_D_free_set(g));
    DFreeSetResult result;
    try {
        search.run();
        result.optimal = true;
    } catch (const BudgetHit&) {
        if (budget.on_exhaust == SearchBudget::OnExhaust::fail) throw SearchExhausted("max_D_free_set: budget exhausted");
    }
    if (!is_D_free(g, search.best)) throw std::logic_error("max_D_free_set produced a set containing D");
    result.set = search.best;
    result.stats = meter.stats();
    return result;
}

FourPartite4Graph FourPartite4Graph::make(std::array<std::vector<Vertex>, 4> parts, std::vector<std::array<int, 4>> edges) {
    const auto m = parts[0].size();
    for (const auto& p : parts)
        if (p.size() != m) throw InputError("4-partite 4-graph needs four parts of equal size");
    for (const auto& e : edges)
        for (int i = 0; i < 4; ++i)
            if (e[static_cast<std::size_t>(i)] < 0 || static_cast<std::size_t>(e[static_cast<std::size_t>(i)]) >= m)
                throw InputError("4-partite edge index out of range");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return FourPartite4Graph{std::move(parts), std::move(edges)};
}

namespace {

class MatchingSearch {
public:
    MatchingSearch(const FourPartite4Graph& h, Meter& meter) : h_(h), meter_(meter), m_(h.part_size()) {
        by_first_.assign(static_cast<std::size_t>(m_), {});
        for (std::size_t i = 0; i < h.edges.size(); ++i) by_first_[static_cast<std::size_t>(h.edges[i][0])].push_back(i);
        for (auto& u : used_) u.assign(static_cast<std::size_t>(m_), 0);
    }

    bool run(int next) {
        meter_.tick();
        if (next == m_) return true;
        if (!viable(next)) return false;
        for (std::size_t e : by_first_[static_cast<std::size_t>(next)]) {
            const auto& edge = h_.edges[e];
            if (used_[1][static_cast<std::size_t>(edge[1])] || used_[2][static_cast<std::size_t>(edge[2])] || used_[3][static_cast<std::size_t>(edge[3])])
                continue;
            for (std::size_t p = 1; p < 4; ++p) used_[p][static_cast<std::size_t>(edge[p])] = 1;
            chosen.push_back(edge);
            if (run(next + 1)) return true;
            chosen.pop_back();
            for (std::size_t p = 1; p < 4; ++p) used_[p][static_cast<std::size_t>(edge[p])] = 0;
        }
        return false;
    }

    std::vector<std::array<int, 4>> chosen;

private:
    /// Every unmatched vertex of every part still lies in some available edge.
    bool viable(int next) {
        for (auto& c : avail_) c.assign(static_cast<std::size_t>(m_), 0);
        for (int v = next; v < m_; ++v)
            for (std::size_t e : by_first_[static_cast<std::size_t>(v)]) {
                const auto& edge = h_.edges[e];
                if (used_[1][static_cast<std::size_t>(edge[1])] || used_[2][static_cast<std::size_t>(edge[2])] || used_[3][static_cast<std::size_t>(edge[3])])
                    continue;
                for (std::size_t p = 0; p < 4; ++p) avail_[p][static_cast<std::size_t>(edge[p])] = 1;
            }
        for (int v = next; v < m_; ++v)
            if (!avail_[0][static_cast<std::size_t>(v)]) return false;
        for (std::size_t p = 1; p < 4; ++p)
            for (int v = 0; v < m_; ++v)
                if (!used_[p][static_cast<std::size_t>(v)] && !avail_[p][static_cast<std::size_t>(v)]) return false;
        return true;
    }

    const FourPartite4Graph& h_;
    Meter& meter_;
    int m_;
    std::vector<std::vector<std::size_t>> by_first_;
    std::array<std::vector<std::uint8_t>, 4> used_;
    std::array<std::vector<std::uint8_t>, 4> avail_;
};

}  // namespace

MatchingResult four_partite_perfect_matching(const FourPartite4Graph& h, const SearchBudget& budget) {
    for (const auto& p : h.parts)
        if (p.size() != h.parts[0].size()) throw InputError("4-partite 4-graph needs four parts of equal size");
    Meter meter(budget);
    MatchingSearch search(h, meter);
    MatchingResult result;
    try {
        if (search.run(0)) {
            result.status = SearchStatus::found;
            result.matching = search.chosen;
        } else {
            result.status = SearchStatus::infeasible;
        }
    } catch (const BudgetHit&) {
        result.status = SearchStatus::exhausted;
    }
    result.stats = meter.stats();
    return result;
}

Verdict validate_matching(const FourPartite4Graph& h, const std::vector<std::array<int, 4>>& matching) {
    Verdict v;
    const int m = h.part_size();
    std::array<std::vector<int>, 4> hit;
    for (auto& x : hit) x.assign(static_cast<std::size_t>(m), 0);
    for (const auto& e : matching) {
        if (!std::binary_search(h.edges.begin(), h.edges.end(), e)) v.fail("matching uses a non-edge");
        for (std::size_t p = 0; p < 4; ++p) {
            if (e[p] < 0 || e[p] >= m) {
                v.fail("matching index out of range");
                continue;
            }
            if (hit[p][static_cast<std::size_t>(e[p])]++) v.fail("overlap in part " + std::to_string(p + 1));
        }
    }
    if (static_cast<int>(matching.size()) != m) v.fail("matching has " + std::to_string(matching.size()) + " edges, need " + std::to_string(m));
    return v;
}

MatchingDegreeReport matching_degree_condition(const FourPartite4Graph& h, double gamma) {
    MatchingDegreeReport r;
    r.m = h.part_size();
    r.gamma = gamma;
    const auto m = static_cast<std::size_t>(r.m);
    if (m == 0) return r;
    std::vector<long long> deg1(m, 0);
    std::vector<long long> deg234(m * m * m, 0);
    for (const auto& e : h.edges) {
        ++deg1[static_cast<std::size_t>(e[0])];
        ++deg234[(static_cast<std::size_t>(e[1]) * m + static_cast<std::size_t>(e[2])) * m + static_cast<std::size_t>(e[3])];
    }
    r.delta_v1 = *std::min_element(deg1.begin(), deg1.end());
    r.delta_v234 = *std::min_element(deg234.begin(), deg234.end());
    const double md = static_cast<double>(m);
    r.lhs = md * static_cast<double>(r.delta_v1) + md * md * md * static_cast<double>(r.delta_v234);
    r.rhs = (1.0 + gamma) * md * md * md * md;
    r.satisfied = r.lhs >= r.rhs;
    return r;
}

}  // namespace dtile
