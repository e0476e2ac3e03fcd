#include "dtile/almost_perfect.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dtile/errors.hpp"
#include "dtile/exact.hpp"

namespace dtile {

const char* to_string(AugmentationMove::Kind kind) {
    switch (kind) {
        case AugmentationMove::Kind::grow: return "grow";
        case AugmentationMove::Kind::split: return "split";
        case AugmentationMove::Kind::big_swap: return "big_swap";
    }
    return "?";
}

BigSmallSplit classify_big_small(const Hypergraph3& g, const Tiling& t, int big_factor) {
    Verdict v = validate_tiling(g, t, false);
    if (!v.ok) throw InputError("classify_big_small: invalid tiling: " + v.violations.front());
    BigSmallSplit s;
    const VertexSet covered = t.covered(g.n());
    s.W = VertexSet::full(g.n()) - covered;
    s.big = VertexSet(g.n());
    s.small = VertexSet(g.n());
    s.threshold = static_cast<long long>(big_factor) * s.W.count();
    covered.for_each([&](Vertex x) {
        if (link_size(g, x, s.W) >= s.threshold)
            s.big.set(x);
        else
            s.small.set(x);
    });
    return s;
}

std::optional<std::array<Vertex, 3>> find_two_path(const std::vector<std::array<Vertex, 2>>& link, const VertexSet& forbidden) {
    std::map<Vertex, std::vector<Vertex>> adj;
    auto blocked = [&](Vertex x) { return x < forbidden.width() && forbidden.test(x); };
    for (const auto& [a, b] : link) {
        if (a == b || blocked(a) || blocked(b)) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& [centre, nbrs] : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        if (nbrs.size() >= 2) return std::array<Vertex, 3>{nbrs[0], centre, nbrs[1]};
    }
    return std::nullopt;
}

Tiling greedy_tiling(const Hypergraph3& g) {
    QuadCatalog cat = quad_catalog(g);
    std::vector<std::uint8_t> used(static_cast<std::size_t>(g.n()), 0);
    Tiling t;
    for (const Quad& q : cat.quads) {
        if (std::any_of(q.begin(), q.end(), [&](Vertex x) { return used[static_cast<std::size_t>(x)]; })) continue;
        for (Vertex x : q) used[static_cast<std::size_t>(x)] = 1;
        t.copies.push_back(witness_on_quad(g, q));
    }
    return t;
}

namespace {

DCopy copy_from_path(Vertex u, const std::array<Vertex, 3>& path) { return DCopy::from_pair(u, path[1], path[0], path[2]); }

VertexSet path_set(int n, const std::array<Vertex, 3>& p) {
    VertexSet s(n);
    for (Vertex x : p) s.set(x);
    return s;
}

class LocalSearch {
public:
    LocalSearch(const Hypergraph3& g, Tiling start, int big_factor) : g_(g), tiling_(std::move(start)), big_factor_(big_factor) {}

    const Tiling& tiling() const { return tiling_; }

    VertexSet uncovered() const { return VertexSet::full(g_.n()) - tiling_.covered(g_.n()); }

    std::optional<AugmentationMove> grow() const {
        std::optional<AugmentationMove> move;
        for_each_D_copy(g_, uncovered(), [&](const DCopy& d) {
            move = AugmentationMove{AugmentationMove::Kind::grow, {}, {d}};
            return false;
        });
        return move;
    }

    std::optional<AugmentationMove> split(const BigSmallSplit& cls) const {
        const int n = g_.n();
        const int w_size = cls.W.count();
        for (std::size_t i = 0; i < tiling_.copies.size(); ++i) {
            std::vector<Vertex> bigs;
            for (Vertex x : tiling_.copies[i].vertices)
                if (cls.big.test(x)) bigs.push_back(x);
            for (std::size_t a = 0; a < bigs.size(); ++a)
                for (std::size_t b = a + 1; b < bigs.size(); ++b) {
                    const Vertex u = bigs[a], v = bigs[b];
                    auto p1 = find_two_path(link_of_vertex_on_set(g_, u, cls.W), VertexSet(n));
                    if (!p1) continue;
                    const VertexSet rest = cls.W - path_set(n, *p1);
                    auto link_v = link_of_vertex_on_set(g_, v, rest);
                    auto p2 = find_two_path(link_v, VertexSet(n));
                    if (2 * static_cast<long long>(link_v.size()) > w_size && !p2)
                        throw std::logic_error("split: link with more than |W|/2 pairs has no 2-path");
                    if (!p2) continue;
                    return AugmentationMove{AugmentationMove::Kind::split, {i}, {copy_from_path(u, *p1), copy_from_path(v, *p2)}};
                }
        }
        return std::nullopt;
    }

    std::optional<AugmentationMove> big_swap(const BigSmallSplit& cls) const {
        const int n = g_.n();
        std::vector<int> owner(static_cast<std::size_t>(n), -1);
        std::vector<Vertex> big_of(tiling_.copies.size(), -1);
        VertexSet s_b(n);
        for (std::size_t i = 0; i < tiling_.copies.size(); ++i) {
            for (Vertex x : tiling_.copies[i].vertices) {
                owner[static_cast<std::size_t>(x)] = static_cast<int>(i);
                if (cls.big.test(x) && big_of[i] < 0) big_of[i] = x;
            }
            if (big_of[i] >= 0)
                for (Vertex x : tiling_.copies[i].vertices)
                    if (x != big_of[i]) s_b.set(x);
        }
        s_b -= cls.big;
        std::optional<AugmentationMove> found;
        for_each_D_copy(g_, s_b, [&](const DCopy& d0) {
            std::vector<std::size_t> elems;
            for (Vertex x : d0.vertices) {
                auto e = static_cast<std::size_t>(owner[static_cast<std::size_t>(x)]);
                if (std::find(elems.begin(), elems.end(), e) == elems.end()) elems.push_back(e);
            }
            VertexSet avail = cls.W;
            std::vector<DCopy> added{d0};
            for (std::size_t e : elems) {
                const Vertex u = big_of[e];
                auto p = find_two_path(link_of_vertex_on_set(g_, u, avail), VertexSet(n));
                if (!p) return true;
                avail -= path_set(n, *p);
                added.push_back(copy_from_path(u, *p));
            }
            std::sort(elems.begin(), elems.end());
            found = AugmentationMove{AugmentationMove::Kind::big_swap, elems, added};
            return false;
        });
        return found;
    }

    void apply(const AugmentationMove& move) {
        const std::size_t before = tiling_.size();
        std::vector<DCopy> kept;
        for (std::size_t i = 0; i < tiling_.copies.size(); ++i)
            if (std::find(move.removed.begin(), move.removed.end(), i) == move.removed.end()) kept.push_back(tiling_.copies[i]);
        kept.insert(kept.end(), move.added.begin(), move.added.end());
        tiling_.copies = std::move(kept);
        if (tiling_.size() <= before) throw std::logic_error("augmentation move did not grow the tiling");
        Verdict v = validate_tiling(g_, tiling_, false);
        if (!v.ok) throw std::logic_error(std::string(to_string(move.kind)) + " produced an invalid tiling: " + v.violations.front());
    }

    int big_factor() const { return big_factor_; }

private:
    const Hypergraph3& g_;
    Tiling tiling_;
    int big_factor_;
};

}  // namespace

NearPerfectResult near_perfect_tiling(const Hypergraph3& g, double gamma, std::size_t move_budget, const NearPerfectOptions& options) {
    if (!(gamma > 0.0)) throw InputError("gamma must be positive");
    NearPerfectResult out;
    auto& rep = out.report;
    const double bound = 50.0 / gamma;
    rep.target = options.target_leftover.value_or(static_cast<int>(std::floor(bound)));
    rep.bound_vacuous = bound >= g.n();
    LocalSearch search(g, greedy_tiling(g), options.big_factor);
    rep.initial_size = static_cast<int>(search.tiling().size());
    std::size_t moves = 0;
    while (true) {
        const int left = search.uncovered().count();
        rep.leftover_trajectory.push_back(left);
        if (left <= rep.target) {
            rep.stop_reason = "target_reached";
            break;
        }
        if (moves >= move_budget) {
            rep.stop_reason = "budget";
            break;
        }
        std::optional<AugmentationMove> move = search.grow();
        if (!move) {
            BigSmallSplit cls = classify_big_small(g, search.tiling(), search.big_factor());
            move = search.split(cls);
            if (!move) move = search.big_swap(cls);
        }
        if (!move) {
            rep.stop_reason = "stalled";
            break;
        }
        search.apply(*move);
        ++moves;
        switch (move->kind) {
            case AugmentationMove::Kind::grow: ++rep.moves_grow; break;
            case AugmentationMove::Kind::split: ++rep.moves_split; break;
            case AugmentationMove::Kind::big_swap: ++rep.moves_big_swap; break;
        }
    }
    out.tiling = search.tiling();
    out.tiling.normalize();
    return out;
}

nlohmann::json to_json(const NearPerfectReport& r) {
    return {{"stop_reason", r.stop_reason},
            {"moves", {{"grow", r.moves_grow}, {"split", r.moves_split}, {"big_swap", r.moves_big_swap}}},
            {"leftover_trajectory", r.leftover_trajectory},
            {"target", r.target},
            {"bound_vacuous", r.bound_vacuous},
            {"initial_size", r.initial_size}};
}

}  // namespace dtile
