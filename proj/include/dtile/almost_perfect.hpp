#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtile/hypergraph.hpp"

namespace dtile {

/**
 * Local-search moves that each grow a D-tiling by exactly one copy.
 *
 *   grow      add a copy living entirely on uncovered vertices
 *   split     an element with two W-big vertices u, v is replaced by
 *             {u} + 2-path in H_u[W] and {v} + disjoint 2-path in H_v[W]
 *   big_swap  a copy D0 on W-small vertices of big-carrying elements
 *             D_1..D_j replaces them together with {u_i} + 2-path copies
 */
struct AugmentationMove {
    enum class Kind { grow, split, big_swap };

    Kind kind = Kind::grow;
    std::vector<std::size_t> removed;  // tiling indices before the move
    std::vector<DCopy> added;
};

const char* to_string(AugmentationMove::Kind kind);

/// Covered vertices split by |H_v[W]| against threshold = 10|W|.
struct BigSmallSplit {
    VertexSet W;
    VertexSet big;
    VertexSet small;
    long long threshold = 0;
};

/// Throws InputError when the tiling does not validate on g.
BigSmallSplit classify_big_small(const Hypergraph3& g, const Tiling& t, int big_factor = 10);

/// Path w1-w2-w3 in the link graph avoiding `forbidden`; the lexicographically
/// first centre, then its two smallest usable neighbours.
std::optional<std::array<Vertex, 3>> find_two_path(const std::vector<std::array<Vertex, 2>>& link, const VertexSet& forbidden);

struct NearPerfectOptions {
    /// Stop once |W| <= target; defaults to floor(50 / gamma).
    std::optional<int> target_leftover;
    int big_factor = 10;
};

struct NearPerfectReport {
    std::string stop_reason;  // target_reached | stalled | budget
    int moves_grow = 0, moves_split = 0, moves_big_swap = 0;
    std::vector<int> leftover_trajectory;
    int target = 0;
    bool bound_vacuous = false;  // 50/gamma >= n
    int initial_size = 0;
};

struct NearPerfectResult {
    Tiling tiling;
    NearPerfectReport report;
};

/// Greedy maximal tiling (canonical-first quads), then moves in priority
/// grow > split > big_swap until the target, a stall, or the move budget.
NearPerfectResult near_perfect_tiling(const Hypergraph3& g, double gamma, std::size_t move_budget, const NearPerfectOptions& options = {});

/// Canonical-first greedy maximal tiling.
Tiling greedy_tiling(const Hypergraph3& g);

nlohmann::json to_json(const NearPerfectReport& r);

}  // namespace dtile
