#include "dtile/driver.hpp"

#include <chrono>

#include "dtile/absorption.hpp"
#include "dtile/almost_perfect.hpp"
#include "dtile/errors.hpp"
#include "dtile/extremal.hpp"
#include "dtile/rng.hpp"

namespace dtile {

const char* to_string(DriverMode mode) {
    switch (mode) {
        case DriverMode::automatic: return "auto";
        case DriverMode::extremal: return "extremal";
        case DriverMode::absorb: return "absorb";
        case DriverMode::exact: return "exact";
    }
    return "?";
}

const char* to_string(Branch branch) {
    switch (branch) {
        case Branch::extremal: return "extremal";
        case Branch::non_extremal: return "non-extremal";
        case Branch::exact_fallback: return "exact-fallback";
    }
    return "?";
}

DriverMode parse_driver_mode(const std::string& s) {
    for (DriverMode m : {DriverMode::automatic, DriverMode::extremal, DriverMode::absorb, DriverMode::exact})
        if (s == to_string(m)) return m;
    throw InputError("unknown mode '" + s + "' (expected auto|extremal|absorb|exact)");
}

namespace {

using Clock = std::chrono::steady_clock;

class StageClock {
public:
    explicit StageClock(nlohmann::json& sink) : sink_(sink) {}
    void lap(const std::string& stage) {
        const auto now = Clock::now();
        sink_[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }

private:
    nlohmann::json& sink_;
    Clock::time_point last_ = Clock::now();
};

DCopy lift(const DCopy& d, const std::vector<Vertex>& to_parent) {
    auto up = [&](const Triple& t) {
        return make_triple(to_parent[static_cast<std::size_t>(t[0])], to_parent[static_cast<std::size_t>(t[1])],
                           to_parent[static_cast<std::size_t>(t[2])]);
    };
    return DCopy::from_edges(up(d.edge_a), up(d.edge_b));
}

bool finish(const Hypergraph3& g, DriverResult& out, Tiling t, Branch branch) {
    t.normalize();
    Verdict v = validate_tiling(g, t, true);
    if (!v.ok) {
        out.report["warnings"].push_back(std::string(to_string(branch)) + " branch produced an invalid tiling: " + v.violations.front());
        return false;
    }
    out.status = SearchStatus::found;
    out.tiling = std::move(t);
    out.branch = branch;
    return true;
}

struct DFreeCertificate {
    VertexSet set;
    bool optimal = false;
};

DFreeCertificate find_D_free_set(const Hypergraph3& g, const SearchBudget& budget) {
    if (g.n() <= 24) {
        auto r = max_D_free_set(g, budget);
        return {extend_to_maximal_D_free(g, r.set), r.optimal};
    }
    return {extend_to_maximal_D_free(g, greedy_D_free_set(g)), false};
}

bool try_extremal(const Hypergraph3& g, const DriverParams& p, const VertexSet& z, DriverResult& out) {
    PipelineState state;
    ExtremalParams ep{p.alpha, p.eps, p.budget};
    try {
        Tiling t = run_extremal_pipeline(g, z, ep, state);
        out.report["extremal"] = to_json(state);
        return finish(g, out, std::move(t), Branch::extremal);
    } catch (const StageFailure& e) {
        out.report["extremal"] = to_json(state);
        out.report["extremal"]["failure"] = e.what();
        if (e.stuck_vertex() >= 0) out.report["extremal"]["stuck_vertex"] = e.stuck_vertex();
    } catch (const SearchExhausted& e) {
        out.report["extremal"] = to_json(state);
        out.report["extremal"]["failure"] = e.what();
    }
    return false;
}

bool try_absorption(const Hypergraph3& g, const DriverParams& p, DriverResult& out, StageClock& clock) {
    const int n = g.n();
    auto& rep = out.report["absorption"];
    AbsorptionParams ap;
    ap.alpha = p.alpha;
    ap.seed = Rng::derive_seed(p.seed, 1);
    ap.strict = p.strict;
    FamilyStats stats;
    AbsorberFamily family;
    try {
        family = build_absorbing_family(g, ap, &stats);
    } catch (const ConstructionFailure& e) {
        rep["family_stats"] = to_json(stats);
        rep["failure"] = e.what();
        clock.lap("absorbing_family");
        return false;
    }
    clock.lap("absorbing_family");
    rep["family_stats"] = to_json(stats);
    rep["family_size"] = family.size();
    rep["A_size"] = family.A.count();

    const auto rest = (VertexSet::full(n) - family.A).to_vector();
    InducedSubgraph h = induced_subgraph(g, rest);
    NearPerfectOptions npo;
    npo.target_leftover = 0;
    NearPerfectResult np = near_perfect_tiling(h.graph, p.gamma, p.move_budget, npo);
    clock.lap("near_perfect");
    rep["near_perfect"] = to_json(np.report);

    Tiling t;
    for (const DCopy& d : np.tiling.copies) t.copies.push_back(lift(d, h.to_parent));
    const VertexSet w = VertexSet::full(n) - family.A - t.covered(n);
    rep["leftover"] = w.count();
    std::vector<std::string> warnings;
    try {
        Tiling absorbed = absorb_leftover(g, family, w, stats.omega, &warnings);
        t.copies.insert(t.copies.end(), absorbed.copies.begin(), absorbed.copies.end());
        rep["absorbed_by"] = "family";
    } catch (const AbsorptionFailure& e) {
        rep["absorption_failure"] = e.what();
        const VertexSet aw = family.A | w;
        if (aw.count() > p.leftover_exact_limit) {
            rep["absorbed_by"] = "none";
            clock.lap("absorb");
            return false;
        }
        auto r = perfect_tiling_exact(g, aw, p.budget);
        if (r.status != SearchStatus::found) {
            rep["absorbed_by"] = "none";
            rep["leftover_exact"] = to_string(r.status);
            clock.lap("absorb");
            return false;
        }
        t.copies.insert(t.copies.end(), r.tiling->copies.begin(), r.tiling->copies.end());
        rep["absorbed_by"] = "exact";
    }
    clock.lap("absorb");
    for (auto& m : warnings) rep["warnings"].push_back(m);
    return finish(g, out, std::move(t), Branch::non_extremal);
}

}  // namespace

DriverResult solve_driver(const Hypergraph3& g, const DriverParams& p) {
    const int n = g.n();
    if (n % 4 != 0) throw InputError("n = " + std::to_string(n) + " is not divisible by 4");
    DriverResult out;
    out.report = {{"n", n}, {"edges", g.edge_count()}, {"min_codegree", g.min_codegree()}, {"mode", to_string(p.mode)},
                  {"params", {{"alpha", p.alpha}, {"gamma", p.gamma}, {"eps", p.eps}, {"seed", p.seed}, {"strict", p.strict}}},
                  {"warnings", nlohmann::json::array()}};
    StageClock clock(out.timings_ms);

    if (p.mode != DriverMode::exact) {
        const DFreeCertificate s = find_D_free_set(g, p.budget);
        clock.lap("d_free_set");
        const double threshold = (1.0 - p.eps) * 3.0 * n / 4.0;
        const bool extremal = s.set.count() >= threshold;
        out.report["d_free_set"] = {{"size", s.set.count()}, {"threshold", threshold}, {"optimal", s.optimal}, {"extremal", extremal}};
        const bool run_extremal = p.mode == DriverMode::extremal || (p.mode == DriverMode::automatic && extremal);
        if (run_extremal) {
            const bool ok = try_extremal(g, p, s.set, out);
            clock.lap("extremal");
            if (ok) return out;
        } else if (try_absorption(g, p, out, clock)) {
            return out;
        }
        if (p.mode != DriverMode::automatic) {
            out.status = SearchStatus::exhausted;
            out.branch = run_extremal ? Branch::extremal : Branch::non_extremal;
            return out;
        }
    }

    auto r = perfect_tiling_exact(g, p.budget);
    clock.lap("exact");
    out.branch = Branch::exact_fallback;
    out.report["exact"] = {{"status", to_string(r.status)}, {"nodes", r.stats.nodes}};
    if (r.status == SearchStatus::found) {
        if (!finish(g, out, *r.tiling, Branch::exact_fallback)) throw std::logic_error("exact solver returned an invalid tiling");
    } else {
        out.status = r.status;
    }
    return out;
}

}  // namespace dtile
