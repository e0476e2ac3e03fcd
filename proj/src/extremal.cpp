#include "dtile/extremal.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "dtile/errors.hpp"

namespace dtile {

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

void note(std::vector<Diagnostic>& out, std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
}

struct BudgetHit {};

}  // namespace

VertexSet extend_to_maximal_D_free(const Hypergraph3& g, const VertexSet& s0) {
    if (!is_D_free(g, s0)) throw InputError("starting set already contains a copy of D");
    VertexSet z = s0;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!z.test(v) && !creates_D(g, z, v)) z.set(v);
    return z;
}

long long link_pairs_in(const Hypergraph3& g, Vertex x, const VertexSet& z) {
    long long twice = 0;
    z.for_each([&](Vertex a) {
        if (a != x) twice += g.neighbours(x, a).count_and(z);
    });
    return twice / 2;
}

XYZPartition partition_XYZ(const Hypergraph3& g, const VertexSet& z, double alpha, double eps0) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0,1), got " + fmt(alpha));
    const int n = g.n();
    XYZPartition p;
    p.alpha = alpha;
    p.Z = z;
    p.X = VertexSet(n);
    p.Y = VertexSet(n);
    const double zs = z.count();
    const double threshold = (1.0 - alpha) * zs * (zs - 1.0) / 2.0;
    for (Vertex v = 0; v < n; ++v) {
        if (z.test(v)) continue;
        if (static_cast<double>(link_pairs_in(g, v, z)) >= threshold)
            p.X.set(v);
        else
            p.Y.set(v);
    }
    const double k = n / 4.0;
    const double x = p.X.count(), y = p.Y.count();
    const double a2 = alpha * alpha;
    note(p.diagnostics, "x_size_window", k * (1 - 4 * a2) <= x && x <= k * (1 + 3 * eps0),
         "|X| = " + fmt(x) + " in [" + fmt(k * (1 - 4 * a2)) + ", " + fmt(k * (1 + 3 * eps0)) + "]");
    note(p.diagnostics, "y_size_cap", y <= 4 * a2 * k, "|Y| = " + fmt(y) + " <= " + fmt(4 * a2 * k));
    note(p.diagnostics, "z_size_window", 3 * k * (1 - eps0) <= zs && zs <= 3 * k,
         "|Z| = " + fmt(zs) + " in [" + fmt(3 * k * (1 - eps0)) + ", " + fmt(3 * k) + "]");
    // every pair of Z sees most of X
    bool all = true;
    int worst = p.X.count();
    for (Vertex a = z.first(); a >= 0; a = z.next(a + 1))
        for (Vertex b = z.next(a + 1); b >= 0; b = z.next(b + 1)) worst = std::min(worst, g.neighbours(a, b).count_and(p.X));
    if (zs >= 2) all = worst >= (1 - alpha) * x;
    note(p.diagnostics, "z_pairs_see_x", all, "min |N(z,z') ∩ X| = " + fmt(worst) + " vs " + fmt((1 - alpha) * x));
    return p;
}

Tiling PipelineState::combined() const {
    Tiling t;
    for (const Tiling* s : {&Q, &R, &S, &T}) t.copies.insert(t.copies.end(), s->copies.begin(), s->copies.end());
    return t;
}

PipelineState start_pipeline(const Hypergraph3& g, const VertexSet& z, double alpha, double eps0) {
    if (g.n() % 4 != 0) throw InputError("extremal pipeline needs n divisible by 4");
    PipelineState st;
    st.partition = partition_XYZ(g, z, alpha, eps0);
    st.k = g.n() / 4;
    st.ell = st.k - st.partition.X.count();
    for (VertexSet* s : {&st.Y_Q, &st.Z_Q, &st.Z_QR, &st.X_R, &st.X_RS, &st.Z_QRS}) *s = VertexSet(g.n());
    st.diagnostics = st.partition.diagnostics;
    const double a2 = alpha * alpha;
    note(st.diagnostics, "ell_window", -3 * eps0 * st.k <= st.ell && st.ell <= 4 * a2 * st.k,
         "ell = " + std::to_string(st.ell) + " in [" + fmt(-3 * eps0 * st.k) + ", " + fmt(4 * a2 * st.k) + "]");
    return st;
}

namespace {

using ZTriple = std::array<Vertex, 3>;

/// Z-triples completing y to a copy of D.
std::vector<ZTriple> q_candidates(const Hypergraph3& g, Vertex y, const std::vector<Vertex>& zs) {
    std::vector<ZTriple> out;
    for (std::size_t a = 0; a < zs.size(); ++a)
        for (std::size_t b = a + 1; b < zs.size(); ++b)
            for (std::size_t c = b + 1; c < zs.size(); ++c) {
                Quad q{y, zs[a], zs[b], zs[c]};
                std::sort(q.begin(), q.end());
                if (spans_D(g, q)) out.push_back({zs[a], zs[b], zs[c]});
            }
    return out;
}

class QSearch {
public:
    QSearch(std::vector<std::vector<ZTriple>> cands, int n, const SearchBudget& budget)
        : cands_(std::move(cands)), used_(static_cast<std::size_t>(n), 0), budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void run(std::size_t i) {
        if (++nodes_ > budget_.node_limit ||
            ((nodes_ & 255U) == 0 && std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > budget_.time_limit_seconds))
            throw BudgetHit{};
        if (chosen_.size() > best.size()) best = chosen_;
        if (best.size() == cands_.size()) throw Done{};
        if (i == cands_.size()) return;
        std::size_t viable = 0;
        for (std::size_t j = i; j < cands_.size(); ++j)
            if (std::any_of(cands_[j].begin(), cands_[j].end(), [&](const ZTriple& t) { return free(t); })) ++viable;
        if (chosen_.size() + viable <= best.size()) return;
        for (const ZTriple& t : cands_[i]) {
            if (!free(t)) continue;
            set(t, 1);
            chosen_.emplace_back(i, t);
            run(i + 1);
            chosen_.pop_back();
            set(t, 0);
        }
        run(i + 1);
    }

    struct Done {};
    std::vector<std::pair<std::size_t, ZTriple>> best;

private:
    bool free(const ZTriple& t) const {
        return !used_[static_cast<std::size_t>(t[0])] && !used_[static_cast<std::size_t>(t[1])] && !used_[static_cast<std::size_t>(t[2])];
    }
    void set(const ZTriple& t, std::uint8_t v) {
        for (Vertex x : t) used_[static_cast<std::size_t>(x)] = v;
    }

    std::vector<std::vector<ZTriple>> cands_;
    std::vector<std::uint8_t> used_;
    std::vector<std::pair<std::size_t, ZTriple>> chosen_;
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
};

void check_partial(const Hypergraph3& g, const PipelineState& st, const char* stage) {
    auto problems = check_stage_shapes(g, st);
    Verdict v = validate_tiling(g, st.combined(), false);
    problems.insert(problems.end(), v.violations.begin(), v.violations.end());
    if (!problems.empty()) throw std::logic_error(std::string("after stage ") + stage + ": " + problems.front());
}

}  // namespace

void build_Q(const Hypergraph3& g, PipelineState& st, const SearchBudget& budget) {
    const auto ys = st.partition.Y.to_vector();
    const auto zs = st.partition.Z.to_vector();
    std::vector<std::vector<ZTriple>> cands;
    cands.reserve(ys.size());
    for (Vertex y : ys) cands.push_back(q_candidates(g, y, zs));

    std::vector<std::pair<std::size_t, ZTriple>> picked;
    if (ys.size() <= 12) {
        QSearch search(cands, g.n(), budget);
        st.q_exact = true;
        try {
            search.run(0);
        } catch (const QSearch::Done&) {
        } catch (const BudgetHit&) {
            st.q_exact = false;
        }
        picked = search.best;
    } else {
        std::vector<std::uint8_t> used(static_cast<std::size_t>(g.n()), 0);
        for (std::size_t i = 0; i < ys.size(); ++i)
            for (const ZTriple& t : cands[i]) {
                if (used[static_cast<std::size_t>(t[0])] || used[static_cast<std::size_t>(t[1])] || used[static_cast<std::size_t>(t[2])]) continue;
                for (Vertex x : t) used[static_cast<std::size_t>(x)] = 1;
                picked.emplace_back(i, t);
                break;
            }
        st.q_exact = false;
    }
    for (const auto& [i, t] : picked) {
        Vertex y = ys[i];
        st.Q.copies.push_back(witness_on_quad(g, {y, t[0], t[1], t[2]}));
        st.Y_Q.set(y);
        for (Vertex z : t) st.Z_Q.set(z);
    }
    st.q = static_cast<int>(st.Q.size());
    note(st.diagnostics, "q_covers_ell", st.q >= st.ell, "q = " + std::to_string(st.q) + ", ell = " + std::to_string(st.ell));
    const double a = st.partition.alpha;
    const int y = st.partition.Y.count();
    note(st.diagnostics, "q_minus_ell_window", 0 <= st.q - st.ell && st.q - st.ell <= 8 * a * a * st.k,
         "q - ell = " + std::to_string(st.q - st.ell) + " in [0, " + fmt(8 * a * a * st.k) + "]");

    // uncovered Y against uncovered Z: both see most of X
    const VertexSet& X = st.partition.X;
    const VertexSet y_rest = st.partition.Y - st.Y_Q;
    const VertexSet z_rest = st.partition.Z - st.Z_Q;
    int worst = X.count();
    y_rest.for_each([&](Vertex yy) { z_rest.for_each([&](Vertex zz) { worst = std::min(worst, g.neighbours(yy, zz).count_and(X)); }); });
    note(st.diagnostics, "yz_pairs_see_x", y_rest.empty() || z_rest.empty() || worst >= (1 - a) * X.count(),
         "min |N(y,z) ∩ X| = " + std::to_string(worst) + " vs " + fmt((1 - a) * X.count()) + " (|Y| = " + std::to_string(y) + ")");
    st.stages_done.push_back("Q");
    check_partial(g, st, "Q");
}

void build_R(const Hypergraph3& g, PipelineState& st) {
    const VertexSet& X = st.partition.X;
    VertexSet z_free = st.partition.Z - st.Z_Q;
    VertexSet x_free = X;
    const VertexSet y_rest = st.partition.Y - st.Y_Q;
    for (Vertex y = y_rest.first(); y >= 0; y = y_rest.next(y + 1)) {
        bool placed = false;
        for (Vertex z1 = z_free.first(); z1 >= 0 && !placed; z1 = z_free.next(z1 + 1))
            for (Vertex z2 = z_free.first(); z2 >= 0 && !placed; z2 = z_free.next(z2 + 1)) {
                if (z2 == z1) continue;
                VertexSet xs = g.neighbours(y, z1) & g.neighbours(z1, z2) & x_free;
                Vertex x = xs.first();
                if (x < 0) continue;
                st.R.copies.push_back(DCopy::from_edges(make_triple(x, y, z1), make_triple(x, z1, z2)));
                z_free.reset(z1);
                z_free.reset(z2);
                x_free.reset(x);
                st.X_R.set(x);
                placed = true;
            }
        if (!placed) throw StageFailure("R", "no (x, z, z') completes uncovered Y-vertex " + std::to_string(y), y);
    }
    st.Z_QR = st.partition.Z - z_free;
    const int y = st.partition.Y.count();
    const int gap = st.q - st.ell;
    const bool x_ok = (X - st.X_R).count() == st.k - y + gap;
    const bool z_ok = (st.partition.Z - st.Z_QR).count() == 3 * (st.k - y) - gap;
    note(st.diagnostics, "after_r_counts", x_ok && z_ok,
         "|X \\ X_R| = " + std::to_string((X - st.X_R).count()) + " (expect " + std::to_string(st.k - y + gap) + "), |Z \\ Z_QR| = " +
             std::to_string((st.partition.Z - st.Z_QR).count()) + " (expect " + std::to_string(3 * (st.k - y) - gap) + ")");
    st.stages_done.push_back("R");
    check_partial(g, st, "R");
}

void build_S(const Hypergraph3& g, PipelineState& st) {
    const VertexSet& X = st.partition.X;
    VertexSet z_free = st.partition.Z - st.Z_QR;
    VertexSet x_free = X - st.X_R;
    const int wanted = std::max(st.q - st.ell, 0);
    for (int i = 0; i < wanted; ++i) {
        bool placed = false;
        for (Vertex z1 = z_free.first(); z1 >= 0 && !placed; z1 = z_free.next(z1 + 1))
            for (Vertex z2 = z_free.next(z1 + 1); z2 >= 0 && !placed; z2 = z_free.next(z2 + 1)) {
                VertexSet xs = g.neighbours(z1, z2) & x_free;
                Vertex x1 = xs.first();
                Vertex x2 = x1 < 0 ? -1 : xs.next(x1 + 1);
                if (x2 < 0) continue;
                st.S.copies.push_back(DCopy::from_pair(z1, z2, x1, x2));
                z_free.reset(z1);
                z_free.reset(z2);
                x_free.reset(x1);
                x_free.reset(x2);
                placed = true;
            }
        if (!placed) throw StageFailure("S", "no Z-pair with two free X-neighbours for copy " + std::to_string(i + 1) + " of " + std::to_string(wanted));
    }
    st.X_RS = X - x_free;
    st.Z_QRS = st.partition.Z - z_free;
    st.m = x_free.count();
    const int y = st.partition.Y.count();
    const int expect_m = st.k - y - (st.q - st.ell);
    const bool ok = st.m == expect_m && z_free.count() == 3 * st.m;
    note(st.diagnostics, "after_s_counts", ok,
         "m = " + std::to_string(st.m) + " (expect " + std::to_string(expect_m) + "), |Z \\ Z_QRS| = " + std::to_string(z_free.count()) +
             " (expect " + std::to_string(3 * st.m) + ")");
    note(st.diagnostics, "m_vs_z", 3 * st.m >= st.partition.Z.count() / 2.0,
         "3m = " + std::to_string(3 * st.m) + " vs |Z|/2 = " + fmt(st.partition.Z.count() / 2.0));
    st.stages_done.push_back("S");
    check_partial(g, st, "S");
    if (z_free.count() != 3 * st.m)
        throw StageFailure("S", "remaining |Z| = " + std::to_string(z_free.count()) + " is not 3 * remaining |X| = " + std::to_string(3 * st.m));
}

Tiling build_T(const Hypergraph3& g, PipelineState& st, const SearchBudget& budget) {
    const auto x0 = (st.partition.X - st.X_RS).to_vector();
    const auto zr = (st.partition.Z - st.Z_QRS).to_vector();
    const auto m = x0.size();
    if (zr.size() != 3 * m) throw StageFailure("T", "remaining Z is not three times remaining X");
    std::array<std::vector<Vertex>, 4> parts;
    parts[0] = x0;
    for (std::size_t i = 0; i < 3; ++i)
        parts[i + 1].assign(zr.begin() + static_cast<std::ptrdiff_t>(i * m), zr.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
    std::vector<std::array<int, 4>> edges;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t d = 0; d < m; ++d) {
                    Quad q{parts[0][a], parts[1][b], parts[2][c], parts[3][d]};
                    std::sort(q.begin(), q.end());
                    if (spans_D(g, q)) edges.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c), static_cast<int>(d)});
                }
    auto h = FourPartite4Graph::make(parts, std::move(edges));
    st.matching_edges = static_cast<int>(h.edges.size());
    st.matching_degree = matching_degree_condition(h, 0.5);
    note(st.diagnostics, "matching_degree_condition", st.matching_degree->satisfied,
         "m*delta(V1) + m^3*delta(V2,V3,V4) = " + fmt(st.matching_degree->lhs) + " vs (1+1/2)m^4 = " + fmt(st.matching_degree->rhs));
    auto res = four_partite_perfect_matching(h, budget);
    st.matching_stats = res.stats;
    if (res.status != SearchStatus::found)
        throw StageFailure("T", std::string("auxiliary 4-partite matching ") + to_string(res.status));
    if (!validate_matching(h, res.matching).ok) throw std::logic_error("T: matcher returned an invalid matching");
    for (const auto& e : res.matching) {
        Quad q{parts[0][static_cast<std::size_t>(e[0])], parts[1][static_cast<std::size_t>(e[1])], parts[2][static_cast<std::size_t>(e[2])],
               parts[3][static_cast<std::size_t>(e[3])]};
        st.T.copies.push_back(witness_on_quad(g, q));
    }
    st.stages_done.push_back("T");
    check_partial(g, st, "T");
    Tiling all = st.combined();
    all.normalize();
    if (!validate_tiling(g, all, true).ok) throw std::logic_error("T: union of stages is not a perfect tiling");
    return all;
}

std::vector<std::string> check_stage_shapes(const Hypergraph3& g, const PipelineState& st) {
    std::vector<std::string> problems;
    const auto& p = st.partition;
    auto shape = [&](const Tiling& t, const char* name, int nx, int ny, int nz) {
        for (const DCopy& d : t.copies) {
            int cx = 0, cy = 0, cz = 0;
            for (Vertex v : d.vertices) {
                cx += p.X.test(v);
                cy += p.Y.test(v);
                cz += p.Z.test(v);
            }
            if (cx != nx || cy != ny || cz != nz) problems.push_back(std::string("stage ") + name + " copy has the wrong X/Y/Z shape");
            if (!g.has_edge(d.edge_a) || !g.has_edge(d.edge_b)) problems.push_back(std::string("stage ") + name + " copy cites a non-edge");
        }
    };
    shape(st.Q, "Q", 0, 1, 3);
    shape(st.R, "R", 1, 1, 2);
    shape(st.S, "S", 2, 0, 2);
    shape(st.T, "T", 1, 0, 3);
    return problems;
}

Tiling run_extremal_pipeline(const Hypergraph3& g, const VertexSet& z, const ExtremalParams& params, PipelineState& state) {
    state = start_pipeline(g, z, params.alpha, params.eps0);
    build_Q(g, state, params.budget);
    build_R(g, state);
    build_S(g, state);
    return build_T(g, state, params.budget);
}

nlohmann::json to_json(const PipelineState& st) {
    using nlohmann::json;
    json diags = json::array();
    for (const auto& d : st.diagnostics) diags.push_back({{"name", d.name}, {"pass", d.pass}, {"detail", d.detail}});
    json j = {
        {"partition", {{"X", st.partition.X.count()}, {"Y", st.partition.Y.count()}, {"Z", st.partition.Z.count()}, {"alpha", st.partition.alpha}}},
        {"k", st.k},
        {"q", st.q},
        {"ell", st.ell},
        {"m", st.m},
        {"q_exact", st.q_exact},
        {"stages", {{"Q", st.Q.size()}, {"R", st.R.size()}, {"S", st.S.size()}, {"T", st.T.size()}}},
        {"stages_done", st.stages_done},
        {"diagnostics", diags},
    };
    if (st.matching_degree) {
        const auto& r = *st.matching_degree;
        j["matching"] = {{"m", r.m},
                         {"edges", st.matching_edges},
                         {"delta_v1", r.delta_v1},
                         {"delta_v234", r.delta_v234},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"gamma", r.gamma},
                         {"degree_condition", r.satisfied},
                         {"nodes", st.matching_stats.nodes}};
    }
    return j;
}

}  // namespace dtile
