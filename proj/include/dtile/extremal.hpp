#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtile/exact.hpp"
#include "dtile/hypergraph.hpp"

namespace dtile {

/// One runtime check of an inequality or identity the tiling argument relies
/// on. Failures are informational: at small n the asymptotic margins vanish.
struct Diagnostic {
    std::string name;
    bool pass = false;
    std::string detail;
};

/**
 * Z is a maximal D-free set; X holds the outside vertices whose link covers at
 * least (1-alpha) of the pairs of Z; Y is everything else.
 */
struct XYZPartition {
    VertexSet X, Y, Z;
    double alpha = 0.0;
    std::vector<Diagnostic> diagnostics;
};

/// Adds vertices in ascending id order while G[Z] stays D-free.
/// Throws InputError when s0 itself contains D.
VertexSet extend_to_maximal_D_free(const Hypergraph3& g, const VertexSet& s0);

/// |N(x) ∩ (Z choose 2)|.
long long link_pairs_in(const Hypergraph3& g, Vertex x, const VertexSet& z);

/// Throws InputError unless 0 < alpha < 1. `eps0` only feeds the size diagnostics.
XYZPartition partition_XYZ(const Hypergraph3& g, const VertexSet& z, double alpha, double eps0);

struct PipelineState {
    XYZPartition partition;
    int k = 0;  // n / 4
    Tiling Q, R, S, T;
    VertexSet Y_Q, Z_Q, Z_QR, X_R, X_RS, Z_QRS;
    int q = 0;
    int ell = 0;  // k - |X|
    int m = 0;
    bool q_exact = false;
    std::vector<Diagnostic> diagnostics;
    std::optional<MatchingDegreeReport> matching_degree;
    SearchStats matching_stats;
    int matching_edges = 0;
    std::vector<std::string> stages_done;

    /// Union of the stages built so far.
    Tiling combined() const;
};

/// Partition plus empty bookkeeping sets. Requires 4 | n.
PipelineState start_pipeline(const Hypergraph3& g, const VertexSet& z, double alpha, double eps0);

/// Largest tiling by copies with three Z-vertices and one Y-vertex: exact
/// branch and bound when |Y| <= 12 (within `budget`), greedy otherwise.
void build_Q(const Hypergraph3& g, PipelineState& state, const SearchBudget& budget = {});
/// Covers the rest of Y with copies of shape (1 Y, 1 X, 2 Z). Throws StageFailure.
void build_R(const Hypergraph3& g, PipelineState& state);
/// max(q - ell, 0) copies of shape (2 X, 2 Z). Throws StageFailure, including
/// when the remaining X and Z counts do not satisfy |Z| = 3|X|.
void build_S(const Hypergraph3& g, PipelineState& state);
/// Perfect matching of the auxiliary 4-partite 4-graph on the remaining X and
/// the remaining Z split into thirds; returns the union of all four stages.
Tiling build_T(const Hypergraph3& g, PipelineState& state, const SearchBudget& budget = {});

/// Copy-shape and disjointness checks for every stage built so far; returns
/// the list of violations (empty when consistent).
std::vector<std::string> check_stage_shapes(const Hypergraph3& g, const PipelineState& state);

struct ExtremalParams {
    double alpha = 0.3;
    double eps0 = 0.25;
    SearchBudget budget;
};

/// All four stages; throws StageFailure when a stage cannot complete.
Tiling run_extremal_pipeline(const Hypergraph3& g, const VertexSet& z, const ExtremalParams& params, PipelineState& state);

nlohmann::json to_json(const PipelineState& state);

}  // namespace dtile
