#include <doctest.h>

#include "dtile/constructions.hpp"
#include "dtile/errors.hpp"
#include "dtile/extremal.hpp"
#include "support.hpp"

using namespace dtile;

namespace {

VertexSet planted_b(int n) {
    VertexSet b(n);
    for (int v = n / 4; v < n; ++v) b.set(v);
    return b;
}

const Diagnostic* find(const std::vector<Diagnostic>& ds, const std::string& name) {
    for (const auto& d : ds)
        if (d.name == name) return &d;
    return nullptr;
}

}  // namespace

TEST_CASE("extend_to_maximal_D_free") {
    auto g = planted_extremal(12);
    auto z = extend_to_maximal_D_free(g, VertexSet(12));
    CHECK(is_D_free(g, z));
    for (Vertex v = 0; v < 12; ++v)
        if (!z.test(v)) CHECK(creates_D(g, z, v));
    CHECK(extend_to_maximal_D_free(g, planted_b(12)) == planted_b(12));
    CHECK_THROWS_AS(extend_to_maximal_D_free(complete_3graph(8), VertexSet::full(8)), InputError);
}

TEST_CASE("partition of a planted instance") {
    auto g = planted_extremal(16);
    auto p = partition_XYZ(g, planted_b(16), 0.3, 0.25);
    CHECK(p.Z == planted_b(16));
    CHECK(p.X.count() == 4);
    CHECK(p.Y.empty());
    CHECK((p.X | p.Y | p.Z) == VertexSet::full(16));
    for (Vertex x = 0; x < 4; ++x) CHECK(link_pairs_in(g, x, p.Z) == 66);
    CHECK_THROWS_AS(partition_XYZ(g, planted_b(16), 1.5, 0.25), InputError);
    for (const auto& d : p.diagnostics) CHECK_MESSAGE(d.pass, d.name << ": " << d.detail);
}

TEST_CASE("pipeline on planted instances") {
    for (int n : {8, 16, 24}) {
        CAPTURE(n);
        auto g = planted_extremal(n);
        PipelineState st;
        Tiling t = run_extremal_pipeline(g, planted_b(n), {}, st);
        CHECK(validate_tiling(g, t, true).ok);
        CHECK(check_stage_shapes(g, st).empty());
        CHECK(st.stages_done == std::vector<std::string>{"Q", "R", "S", "T"});
        CHECK(st.m == n / 4);
        CHECK(st.T.size() == static_cast<std::size_t>(n / 4));
        for (const char* name : {"after_r_counts", "after_s_counts", "q_covers_ell"}) {
            auto d = find(st.diagnostics, name);
            REQUIRE(d);
            CHECK_MESSAGE(d->pass, name << ": " << d->detail);
        }
        auto js = to_json(st);
        CHECK(js.contains("diagnostics"));
    }
}

TEST_CASE("pipeline with a Y vertex uses Q and R") {
    // planted_extremal(16) plus one B-vertex that becomes Y once its edges into A are cut
    auto base = planted_extremal(16);
    std::vector<Triple> edges;
    for (const auto& e : base.edges())
        if (!(e[0] < 4 && e[1] >= 4 && e[2] == 15)) edges.push_back(e);
    for (int a = 4; a < 15; ++a)
        for (int b = a + 1; b < 15; ++b) edges.push_back({a, b, 15});
    auto g = Hypergraph3::build(16, edges);
    VertexSet z(16);
    for (int v = 4; v < 15; ++v) z.set(v);
    PipelineState st;
    Tiling t;
    try {
        t = run_extremal_pipeline(g, extend_to_maximal_D_free(g, z), {}, st);
    } catch (const StageFailure& e) {
        FAIL(e.what());
    }
    CHECK(validate_tiling(g, t, true).ok);
    CHECK(check_stage_shapes(g, st).empty());
}

TEST_CASE("pipeline stops on G1 with a stage failure") {
    auto g = construct_G1(8);
    VertexSet b(8);
    for (int v = 1; v < 8; ++v) b.set(v);
    PipelineState st;
    CHECK_THROWS_AS(run_extremal_pipeline(g, b, {}, st), StageFailure);
}
