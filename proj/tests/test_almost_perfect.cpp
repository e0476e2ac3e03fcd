#include <doctest.h>

#include "dtile/almost_perfect.hpp"
#include "dtile/constructions.hpp"
#include "dtile/errors.hpp"
#include "support.hpp"

using namespace dtile;

TEST_CASE("find_two_path") {
    std::vector<std::array<Vertex, 2>> link{{5, 6}, {1, 2}, {2, 3}};
    auto p = find_two_path(link, VertexSet(8));
    REQUIRE(p);
    CHECK(*p == std::array<Vertex, 3>{1, 2, 3});
    CHECK_FALSE(find_two_path(link, support::set_of(8, {2})));
    CHECK_FALSE(find_two_path({{0, 1}, {2, 3}}, VertexSet(8)));
}

TEST_CASE("classify_big_small") {
    auto g = complete_3graph(9);
    Tiling t{{DCopy::from_pair(0, 1, 2, 3)}};
    auto s = classify_big_small(g, t, 1);
    CHECK(s.W.count() == 5);
    CHECK(s.threshold == 5);
    CHECK(s.big.count() == 4);
    auto strict = classify_big_small(g, t, 10);
    CHECK(strict.big.empty());
    CHECK(strict.small.count() == 4);
    Tiling bad{{DCopy::from_pair(0, 1, 2, 3), DCopy::from_pair(0, 4, 5, 6)}};
    CHECK_THROWS_AS(classify_big_small(g, bad), InputError);
}

TEST_CASE("greedy tiling is maximal") {
    auto g = support::random_graph(16, 0.2, 9);
    auto t = greedy_tiling(g);
    CHECK(validate_tiling(g, t, false).ok);
    VertexSet rest = VertexSet::full(16) - t.covered(16);
    CHECK(is_D_free(g, rest));
}

TEST_CASE("near-perfect tiling on dense random instances") {
    int stalls = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = random_codegree_instance(32, 11, seed).graph;
        auto r = near_perfect_tiling(g, 0.1, 1000, NearPerfectOptions{0, 10});
        CAPTURE(seed);
        CHECK(validate_tiling(g, r.tiling, false).ok);
        const int left = 32 - 4 * static_cast<int>(r.tiling.size());
        CHECK(left == r.report.leftover_trajectory.back());
        CHECK(left % 4 == 0);
        CHECK(std::is_sorted(r.report.leftover_trajectory.rbegin(), r.report.leftover_trajectory.rend()));
        CHECK(r.report.moves_grow + r.report.moves_split + r.report.moves_big_swap ==
              static_cast<int>(r.tiling.size()) - r.report.initial_size);
        if (r.report.stop_reason == "stalled") {
            ++stalls;
            CHECK(left <= 8);
        } else {
            CHECK(r.report.stop_reason == "target_reached");
        }
    }
    MESSAGE("stalls: " << stalls);
}

TEST_CASE("near-perfect report fields") {
    auto g = complete_3graph(12);
    auto r = near_perfect_tiling(g, 0.1, 100);
    CHECK(r.report.target == 500);
    CHECK(r.report.bound_vacuous);
    CHECK(r.report.stop_reason == "target_reached");
    auto full = near_perfect_tiling(g, 0.1, 100, NearPerfectOptions{0, 10});
    CHECK(full.tiling.size() == 3);
    auto js = to_json(full.report);
    CHECK(js["stop_reason"] == "target_reached");
    CHECK_THROWS_AS(near_perfect_tiling(g, 0.0, 10), InputError);
    auto none = near_perfect_tiling(support::random_graph(16, 0.3, 2), 0.1, 0, NearPerfectOptions{0, 10});
    CHECK((none.report.stop_reason == "budget" || none.report.stop_reason == "target_reached"));
}
