#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dtile/hypergraph.hpp"

namespace dtile {

struct SearchBudget {
    enum class OnExhaust { fail, return_best };

    std::uint64_t node_limit = 10'000'000;
    double time_limit_seconds = 60.0;
    OnExhaust on_exhaust = OnExhaust::return_best;
};

/// `infeasible` is only ever reported after the search space is exhausted;
/// hitting the budget is `exhausted`.
enum class SearchStatus { found, infeasible, exhausted };

const char* to_string(SearchStatus s);

struct SearchStats {
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

using Quad = std::array<Vertex, 4>;

/// Every 4-set inducing at least two edges, sorted lexicographically, with a
/// per-vertex incidence list (quad ids in catalog order).
struct QuadCatalog {
    std::vector<Quad> quads;
    std::vector<std::vector<std::uint32_t>> incidence;
};

QuadCatalog quad_catalog(const Hypergraph3& g, const std::optional<VertexSet>& within = std::nullopt);

struct PerfectTilingResult {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<Tiling> tiling;
    SearchStats stats;
};

/// Exact cover of V by quads: branch on the uncovered vertex with the fewest
/// live quads, prune on an empty vertex or when a greedy D-free set leaves
/// too small a hitting set. Throws InputError unless 4 | n.
PerfectTilingResult perfect_tiling_exact(const Hypergraph3& g, const SearchBudget& budget = {});

/// Same search restricted to G[within]; the tiling covers exactly `within`.
PerfectTilingResult perfect_tiling_exact(const Hypergraph3& g, const VertexSet& within, const SearchBudget& budget = {});

struct MaxTilingResult {
    Tiling tiling;
    bool optimal = false;
    SearchStats stats;
};

/// Branch and bound on tiling size. With OnExhaust::fail a budget hit throws
/// SearchExhausted; otherwise the best tiling found is returned unflagged.
MaxTilingResult max_tiling_exact(const Hypergraph3& g, const SearchBudget& budget = {});

struct DFreeSetResult {
    VertexSet set;
    bool optimal = false;
    SearchStats stats;
};

/// Largest S with G[S] D-free: minimum hitting set of the quad catalog,
/// branching on a live quad with the fewest undecided vertices.
DFreeSetResult max_D_free_set(const Hypergraph3& g, const SearchBudget& budget = {});

/// Greedy D-free set: vertices by ascending degree (ties by id), each kept
/// when it does not close a copy of D.
VertexSet greedy_D_free_set(const Hypergraph3& g);

/**
 * 4-partite 4-graph. Parts hold global vertex ids; edges hold one local index
 * per part, i.e. edge {p0, p1, p2, p3} is the vertex set
 * {parts[0][p0], parts[1][p1], parts[2][p2], parts[3][p3]}.
 */
struct FourPartite4Graph {
    std::array<std::vector<Vertex>, 4> parts;
    std::vector<std::array<int, 4>> edges;

    /// Throws InputError on unequal parts or out-of-range edge indices.
    static FourPartite4Graph make(std::array<std::vector<Vertex>, 4> parts, std::vector<std::array<int, 4>> edges);

    int part_size() const { return static_cast<int>(parts[0].size()); }
};

struct MatchingResult {
    SearchStatus status = SearchStatus::exhausted;
    std::vector<std::array<int, 4>> matching;
    SearchStats stats;
};

/// Matches V1's vertices in order, pruning whenever some unmatched vertex of
/// any part has no edge left.
MatchingResult four_partite_perfect_matching(const FourPartite4Graph& h, const SearchBudget& budget = {});

Verdict validate_matching(const FourPartite4Graph& h, const std::vector<std::array<int, 4>>& matching);

/// The degree hypothesis m·δ(V1) + m³·δ(V2,V3,V4) >= (1+γ)m⁴ evaluated on h.
struct MatchingDegreeReport {
    int m = 0;
    long long delta_v1 = 0;
    long long delta_v234 = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double gamma = 0.0;
    bool satisfied = false;
};

MatchingDegreeReport matching_degree_condition(const FourPartite4Graph& h, double gamma);

}  // namespace dtile
