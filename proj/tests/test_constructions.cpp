#include <doctest.h>

#include "dtile/constructions.hpp"
#include "dtile/errors.hpp"
#include "oracles.hpp"

using namespace dtile;

namespace {

/// Every pair lies in exactly one block, checked by counting over the edge list.
bool every_pair_once(const Hypergraph3& g) {
    const int m = g.n();
    std::vector<int> seen(static_cast<std::size_t>(m * m), 0);
    for (const auto& e : g.edges())
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) ++seen[static_cast<std::size_t>(e[i] * m + e[j])];
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (seen[static_cast<std::size_t>(u * m + v)] != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("Steiner triple systems") {
    for (int m : {3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33}) {
        CAPTURE(m);
        auto g = steiner_triple_system(m);
        CHECK(g.n() == m);
        CHECK(g.edge_count() == static_cast<std::size_t>(m * (m - 1) / 6));
        CHECK(every_pair_once(g));
    }
    for (int m : {0, 2, 4, 5, 6, 8, 11, 12}) CHECK_THROWS_AS(steiner_triple_system(m), UnsupportedOrder);
}

TEST_CASE("G0 and G1 shapes") {
    for (int n : {12, 20, 28}) {
        auto g = construct_G0(n);
        CHECK(g.min_codegree() == n / 4 - 1);
        CHECK(g.min_codegree() == oracle::min_codegree(oracle::edge_set(g), n));
        std::vector<Vertex> b;
        for (int v = n / 4 - 1; v < n; ++v) b.push_back(v);
        CHECK(is_D_free(g, VertexSet::of(n, b)));
    }
    for (int n : {8, 16, 24}) {
        auto g = construct_G1(n);
        CHECK(g.min_codegree() == n / 4);
        std::vector<Vertex> b;
        for (int v = n / 4 - 1; v < n; ++v) b.push_back(v);
        CHECK(is_D_free(g, VertexSet::of(n, b)));
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) CHECK(g.codegree(b[i], b[j]) == n / 4);
    }
    CHECK_THROWS_AS(construct_G1(12), InputError);
    CHECK_THROWS_AS(construct_G0(10), InputError);
}

TEST_CASE("planted extremal instance") {
    for (int n : {8, 12, 16}) {
        auto g = planted_extremal(n);
        std::vector<Vertex> b;
        for (int v = n / 4; v < n; ++v) b.push_back(v);
        CHECK(is_D_free(g, VertexSet::of(n, b)));
        CHECK(g.min_codegree() == n / 4);
    }
}

TEST_CASE("complete graphs") {
    auto k = complete_3graph(7);
    CHECK(k.edge_count() == 35);
    CHECK(k.min_codegree() == 5);
    auto t = complete_3partite(2, 3, 4);
    CHECK(t.edge_count() == 24);
    CHECK(t.codegree(0, 1) == 0);
    CHECK(t.codegree(0, 2) == 4);
}

TEST_CASE("random instances reach the target codegree deterministically") {
    for (auto [n, d] : {std::pair{12, 3}, std::pair{16, 5}, std::pair{24, 8}, std::pair{20, 0}}) {
        auto a = random_codegree_instance(n, d, 17);
        auto b = random_codegree_instance(n, d, 17);
        CHECK(a.graph.edges() == b.graph.edges());
        CHECK(a.graph.min_codegree() >= d);
        CHECK(oracle::min_codegree(oracle::edge_set(a.graph), n) == a.graph.min_codegree());
    }
    CHECK(random_codegree_instance(16, 4, 1).graph.edges() != random_codegree_instance(16, 4, 2).graph.edges());
    CHECK(random_codegree_instance(12, 0, 1).graph.edge_count() == 0);
}

TEST_CASE("generate dispatches on kind") {
    CHECK(parse_construction_kind("g1") == ConstructionKind::G1);
    CHECK(parse_construction_kind("tripartite") == ConstructionKind::complete_3partite);
    CHECK_THROWS_AS(parse_construction_kind("nope"), InputError);
    CHECK(generate({ConstructionKind::complete, 6, 0, 0}).edge_count() == 20);
    CHECK(generate({ConstructionKind::sts, 9, 0, 0}).edge_count() == 12);
    CHECK(generate({ConstructionKind::random_codegree, 12, 3, 4}).min_codegree() >= 4);
}
