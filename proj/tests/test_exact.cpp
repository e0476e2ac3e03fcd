#include <doctest.h>

#include "dtile/constructions.hpp"
#include "dtile/errors.hpp"
#include "dtile/exact.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dtile;

TEST_CASE("perfect tiling agrees with the naive partition search") {
    int feasible = 0, infeasible = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int n = seed % 2 ? 8 : 12;
        const double p = 0.1 + 0.05 * static_cast<double>(seed % 10);
        auto g = support::random_graph(n, p, seed);
        auto e = oracle::edge_set(g);
        auto r = perfect_tiling_exact(g);
        const bool truth = oracle::perfectly_tileable(e, n);
        CAPTURE(seed);
        REQUIRE(r.status != SearchStatus::exhausted);
        CHECK((r.status == SearchStatus::found) == truth);
        if (r.tiling) CHECK(validate_tiling(g, *r.tiling, true).ok);
        auto mx = max_tiling_exact(g);
        CHECK(mx.optimal);
        CHECK(static_cast<int>(mx.tiling.size()) == oracle::max_tiling_size(e, n));
        CHECK(validate_tiling(g, mx.tiling, false).ok);
        (truth ? feasible : infeasible)++;
    }
    CHECK(feasible > 5);
    CHECK(infeasible > 5);
}

TEST_CASE("perfect tiling inside a vertex subset") {
    auto g = complete_3graph(10);
    auto r = perfect_tiling_exact(g, support::set_of(10, {0, 2, 4, 6, 8, 9, 1, 3}));
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.tiling->covered(10) == support::set_of(10, {0, 1, 2, 3, 4, 6, 8, 9}));
    CHECK_THROWS_AS(perfect_tiling_exact(g, support::set_of(10, {0, 1, 2})), InputError);
    CHECK(perfect_tiling_exact(g, VertexSet(10)).status == SearchStatus::found);
}

TEST_CASE("perfect tiling input checks and budget") {
    CHECK_THROWS_AS(perfect_tiling_exact(complete_3graph(10)), InputError);
    SearchBudget tiny;
    tiny.node_limit = 1;
    auto r = perfect_tiling_exact(random_codegree_instance(40, 10, 1).graph, tiny);
    CHECK(r.status == SearchStatus::exhausted);
    tiny.on_exhaust = SearchBudget::OnExhaust::fail;
    CHECK(perfect_tiling_exact(random_codegree_instance(40, 10, 1).graph, tiny).status == SearchStatus::exhausted);
    CHECK_THROWS_AS(max_tiling_exact(random_codegree_instance(40, 10, 1).graph, tiny), SearchExhausted);
    CHECK_THROWS_AS(max_D_free_set(random_codegree_instance(40, 10, 1).graph, tiny), SearchExhausted);
}

TEST_CASE("lower-bound constructions are not tileable") {
    CHECK(perfect_tiling_exact(construct_G1(8)).status == SearchStatus::infeasible);
    CHECK(perfect_tiling_exact(construct_G0(12)).status == SearchStatus::infeasible);
    CHECK(perfect_tiling_exact(planted_extremal(12)).status == SearchStatus::found);
    CHECK(!oracle::perfectly_tileable(oracle::edge_set(construct_G1(8)), 8));
    CHECK(!oracle::perfectly_tileable(oracle::edge_set(construct_G0(12)), 12));
}

TEST_CASE("max D-free set examples") {
    auto p = max_D_free_set(planted_extremal(8));
    CHECK(p.optimal);
    CHECK(p.set.count() == 6);
    auto k = max_D_free_set(complete_3graph(8));
    CHECK(k.set.count() == 3);
    auto e = max_D_free_set(Hypergraph3::build(8, {}));
    CHECK(e.set.count() == 8);
}

TEST_CASE("max D-free set agrees with subset enumeration") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const int n = 8 + static_cast<int>(seed % 3);
        auto g = support::random_graph(n, 0.1 + 0.04 * static_cast<double>(seed), seed);
        auto r = max_D_free_set(g);
        CAPTURE(seed);
        CHECK(r.optimal);
        CHECK(is_D_free(g, r.set));
        CHECK(r.set.count() == oracle::max_D_free_size(oracle::edge_set(g), n));
        CHECK(is_D_free(g, greedy_D_free_set(g)));
    }
}

TEST_CASE("quad catalog lists each spanning quad once") {
    auto g = support::random_graph(9, 0.3, 4);
    auto cat = quad_catalog(g);
    auto e = oracle::edge_set(g);
    std::size_t expect = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b)
            for (int c = b + 1; c < 9; ++c)
                for (int d = c + 1; d < 9; ++d) expect += oracle::edges_on(e, a, b, c, d) >= 2;
    CHECK(cat.quads.size() == expect);
    CHECK(std::is_sorted(cat.quads.begin(), cat.quads.end()));
    CHECK(std::adjacent_find(cat.quads.begin(), cat.quads.end()) == cat.quads.end());
}

TEST_CASE("4-partite matching agrees with brute force") {
    Rng rng(5);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 1 + trial % 4;
        std::array<std::vector<Vertex>, 4> parts;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < m; ++j) parts[i].push_back(i * m + j);
        std::vector<std::array<int, 4>> edges;
        const double p = 0.05 + 0.1 * (trial % 5);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d)
                        if (rng.bernoulli(p)) edges.push_back({a, b, c, d});
        auto h = FourPartite4Graph::make(parts, edges);
        auto r = four_partite_perfect_matching(h);
        const bool truth = oracle::has_perfect_matching(m, h.edges);
        CAPTURE(trial);
        CHECK((r.status == SearchStatus::found) == truth);
        if (r.status == SearchStatus::found) CHECK(validate_matching(h, r.matching).ok);
        (truth ? yes : no)++;
    }
    CHECK(yes > 5);
    CHECK(no > 5);
}

TEST_CASE("4-partite graph validation and degree condition") {
    std::array<std::vector<Vertex>, 4> uneven{{{0}, {1}, {2}, {3, 4}}};
    CHECK_THROWS_AS(FourPartite4Graph::make(uneven, {}), InputError);
    std::array<std::vector<Vertex>, 4> parts{{{0, 1}, {2, 3}, {4, 5}, {6, 7}}};
    CHECK_THROWS_AS(FourPartite4Graph::make(parts, {{0, 0, 0, 2}}), InputError);
    std::vector<std::array<int, 4>> all;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) all.push_back({a, b, c, d});
    auto h = FourPartite4Graph::make(parts, all);
    auto rep = matching_degree_condition(h, 0.5);
    CHECK(rep.delta_v1 == 8);
    CHECK(rep.delta_v234 == 2);
    CHECK(rep.lhs == doctest::Approx(2 * 8 + 8 * 2));
    CHECK(rep.satisfied);
    auto sparse = FourPartite4Graph::make(parts, {{0, 0, 0, 0}, {1, 1, 1, 1}});
    CHECK_FALSE(matching_degree_condition(sparse, 0.5).satisfied);
    CHECK(four_partite_perfect_matching(sparse).status == SearchStatus::found);
    Verdict bad = validate_matching(sparse, {{0, 0, 0, 0}, {0, 1, 1, 1}});
    CHECK_FALSE(bad.ok);
}
