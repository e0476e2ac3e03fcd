#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtile/exact.hpp"
#include "dtile/hypergraph.hpp"

namespace dtile {

enum class DriverMode { automatic, extremal, absorb, exact };
enum class Branch { extremal, non_extremal, exact_fallback };

const char* to_string(DriverMode mode);
const char* to_string(Branch branch);
DriverMode parse_driver_mode(const std::string& s);

struct DriverParams {
    DriverMode mode = DriverMode::automatic;
    double alpha = 0.3;
    double gamma = 0.1;
    double eps = 0.25;
    std::uint64_t seed = 0;
    bool strict = false;
    SearchBudget budget;
    std::size_t move_budget = 100000;
    int leftover_exact_limit = 32;  // exact solve on G[A ∪ W] up to this many vertices
};

struct DriverResult {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<Tiling> tiling;  // perfect and validated when status == found
    Branch branch = Branch::exact_fallback;
    nlohmann::json report;         // deterministic content only
    nlohmann::json timings_ms = nlohmann::json::object();
};

/// D-free set → extremal pipeline when |S| >= (1-eps)·3n/4, else absorbing
/// family + near-perfect tiling of G[V \ A] + absorption of the leftover.
/// In automatic mode any failure falls back to the exact solver.
/// Throws InputError when 4 does not divide n.
DriverResult solve_driver(const Hypergraph3& g, const DriverParams& params = {});

}  // namespace dtile
