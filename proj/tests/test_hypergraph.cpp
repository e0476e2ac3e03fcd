#include <doctest.h>

#include <numeric>

#include "dtile/errors.hpp"
#include "dtile/hypergraph.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dtile;

TEST_CASE("vertex set basics") {
    VertexSet s(130);
    s.set(3);
    s.set(64);
    s.set(129);
    CHECK(s.count() == 3);
    CHECK(s.first() == 3);
    CHECK(s.next(4) == 64);
    CHECK(s.next(65) == 129);
    CHECK(s.next(130) == -1);
    VertexSet t = VertexSet::of(130, std::vector<Vertex>{3, 5});
    CHECK((s & t).count() == 1);
    CHECK((s | t).count() == 4);
    CHECK((s - t).to_vector() == std::vector<Vertex>{64, 129});
    CHECK(VertexSet::full(130).count() == 130);
    CHECK((s & t).is_subset_of(s));
}

TEST_CASE("build rejects bad triples and deduplicates") {
    std::vector<Triple> dup{{0, 1, 2}, {2, 1, 0}, {0, 1, 3}};
    auto g = Hypergraph3::build(4, dup);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(2, 0, 1));
    std::vector<Triple> degenerate{{0, 0, 1}};
    CHECK_THROWS_AS(Hypergraph3::build(4, degenerate), InputError);
    std::vector<Triple> out{{0, 1, 4}};
    CHECK_THROWS_AS(Hypergraph3::build(4, out), InputError);
    CHECK_THROWS_AS(g.codegree(1, 1), InputError);
    CHECK(Hypergraph3::build(1, {}).min_codegree() == 0);
}

TEST_CASE("codegrees match a naive count") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = support::random_graph(11, 0.4, seed);
        auto e = oracle::edge_set(g);
        int mn = 1 << 30, mx = 0;
        long long sum = 0;
        for (int u = 0; u < 11; ++u)
            for (int v = u + 1; v < 11; ++v) {
                const int c = oracle::codegree(e, 11, u, v);
                CHECK(g.codegree(u, v) == c);
                CHECK(g.codegree(v, u) == c);
                mn = std::min(mn, c);
                mx = std::max(mx, c);
                sum += c;
            }
        CHECK(g.min_codegree() == mn);
        CHECK(g.max_codegree() == mx);
        CHECK(sum == 3 * static_cast<long long>(g.edge_count()));
        long long degs = 0;
        for (int v = 0; v < 11; ++v) degs += g.degree(v);
        CHECK(degs == 3 * static_cast<long long>(g.edge_count()));
    }
}

TEST_CASE("codegree multiset is invariant under relabelling") {
    auto g = support::random_graph(10, 0.5, 42);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(7);
    rng.shuffle(perm);
    auto h = support::relabel(g, perm);
    std::vector<int> a, b;
    for (int u = 0; u < 10; ++u)
        for (int v = u + 1; v < 10; ++v) {
            a.push_back(g.codegree(u, v));
            b.push_back(h.codegree(u, v));
            CHECK(g.codegree(u, v) == h.codegree(perm[u], perm[v]));
        }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(enumerate_D_copies(g).size() == enumerate_D_copies(h).size());
}

TEST_CASE("D-freeness agrees with a pairwise edge scan") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = support::random_graph(9, 0.15, seed);
        auto e = oracle::edge_set(g);
        Rng rng(seed);
        for (int trial = 0; trial < 10; ++trial) {
            auto s = rng.sample_distinct(9, 1 + static_cast<int>(rng.below(8)));
            CHECK(is_D_free(g, VertexSet::of(9, s)) == oracle::is_D_free(e, s));
        }
    }
}

TEST_CASE("enumerated copies are exactly the edge pairs sharing two vertices") {
    auto g = support::random_graph(8, 0.35, 3);
    const auto& es = g.edges();
    std::size_t expect = 0;
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            int shared = 0;
            for (int x : es[i]) shared += static_cast<int>(std::count(es[j].begin(), es[j].end(), x));
            expect += shared == 2;
        }
    auto copies = enumerate_D_copies(g);
    CHECK(copies.size() == expect);
    for (const auto& d : copies) {
        CHECK(g.has_edge(d.edge_a));
        CHECK(g.has_edge(d.edge_b));
        CHECK(d.edge_a < d.edge_b);
        CHECK(std::is_sorted(d.vertices.begin(), d.vertices.end()));
    }
    std::size_t streamed = 0;
    for_each_D_copy(g, VertexSet::full(8), [&](const DCopy&) { return ++streamed, true; });
    CHECK(streamed == expect);
}

TEST_CASE("DCopy constructors") {
    auto d = DCopy::from_pair(5, 2, 9, 1);
    CHECK(d.vertices == std::array<Vertex, 4>{1, 2, 5, 9});
    CHECK(d.edge_a == Triple{1, 2, 5});
    CHECK(d.edge_b == Triple{2, 5, 9});
    CHECK(DCopy::from_edges({2, 5, 9}, {1, 2, 5}) == d);
    CHECK_THROWS_AS(DCopy::from_edges({0, 1, 2}, {0, 3, 4}), InputError);
    CHECK_THROWS_AS(DCopy::from_edges({0, 1, 2}, {0, 1, 2}), InputError);
}

TEST_CASE("spans_D and witness_on_quad") {
    std::vector<Triple> t{{0, 1, 2}, {0, 1, 3}};
    auto g = Hypergraph3::build(5, t);
    CHECK(spans_D(g, {0, 1, 2, 3}));
    CHECK_FALSE(spans_D(g, {0, 1, 2, 4}));
    auto w = witness_on_quad(g, {3, 2, 1, 0});
    CHECK(w.edge_a == Triple{0, 1, 2});
    CHECK(w.edge_b == Triple{0, 1, 3});
    CHECK_THROWS_AS(witness_on_quad(g, {0, 1, 2, 4}), InputError);
}

TEST_CASE("creates_D and links") {
    std::vector<Triple> t{{0, 1, 2}, {0, 1, 3}, {1, 2, 4}};
    auto g = Hypergraph3::build(5, t);
    auto s = support::set_of(5, {0, 1, 2});
    CHECK(creates_D(g, s, 3));
    CHECK(creates_D(g, s, 4));
    CHECK_FALSE(creates_D(g, support::set_of(5, {0, 2}), 3));
    auto link = link_of_vertex_on_set(g, 1, support::set_of(5, {0, 2, 3, 4}));
    CHECK(link.size() == 3);
    CHECK(link_size(g, 1, support::set_of(5, {0, 2, 3, 4})) == 3);
    CHECK_THROWS_AS(link_of_vertex_on_set(g, 1, support::set_of(5, {1, 2})), InputError);
}

TEST_CASE("validate_tiling names violations") {
    std::vector<Triple> t{{0, 1, 2}, {0, 1, 3}, {4, 5, 6}, {4, 5, 7}};
    auto g = Hypergraph3::build(8, t);
    Tiling ok{{DCopy::from_pair(0, 1, 2, 3), DCopy::from_pair(4, 5, 6, 7)}};
    CHECK(validate_tiling(g, ok, true).ok);

    Tiling partial{{DCopy::from_pair(0, 1, 2, 3)}};
    CHECK(validate_tiling(g, partial, false).ok);
    auto v = validate_tiling(g, partial, true);
    REQUIRE_FALSE(v.ok);
    CHECK(v.violations.front().rfind("not perfect", 0) == 0);

    Tiling missing{{DCopy::from_pair(0, 2, 1, 3)}};
    v = validate_tiling(g, missing, false);
    REQUIRE_FALSE(v.ok);
    CHECK(v.violations.front().rfind("missing edge", 0) == 0);

    Tiling overlap{{DCopy::from_pair(0, 1, 2, 3), DCopy::from_pair(0, 1, 2, 3)}};
    v = validate_tiling(g, overlap, false);
    REQUIRE_FALSE(v.ok);
    CHECK(v.violations.front().rfind("overlap", 0) == 0);

    Tiling range{{DCopy::from_pair(0, 1, 2, 9)}};
    CHECK_FALSE(validate_tiling(g, range, false).ok);
}

TEST_CASE("induced subgraph keeps exactly the inner edges") {
    auto g = support::random_graph(10, 0.5, 11);
    std::vector<Vertex> keep{1, 3, 4, 7, 8};
    auto sub = induced_subgraph(g, keep);
    CHECK(sub.graph.n() == 5);
    CHECK(sub.to_parent == keep);
    std::size_t inner = 0;
    for (const auto& e : g.edges())
        inner += std::all_of(e.begin(), e.end(), [&](Vertex v) { return std::count(keep.begin(), keep.end(), v) > 0; });
    CHECK(sub.graph.edge_count() == inner);
    for (const auto& e : sub.graph.edges()) CHECK(g.has_edge(make_triple(keep[e[0]], keep[e[1]], keep[e[2]])));
}
