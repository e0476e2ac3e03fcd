#pragma once

#include <vector>

#include "dtile/hypergraph.hpp"
#include "dtile/rng.hpp"

namespace support {

/// Binomial 3-graph G(n, p) drawn from dtile::Rng.
inline dtile::Hypergraph3 random_graph(int n, double p, std::uint64_t seed) {
    dtile::Rng rng(seed);
    std::vector<dtile::Triple> t;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (rng.bernoulli(p)) t.push_back({a, b, c});
    return dtile::Hypergraph3::build(n, t);
}

/// Same graph with vertex v renamed perm[v].
inline dtile::Hypergraph3 relabel(const dtile::Hypergraph3& g, const std::vector<int>& perm) {
    std::vector<dtile::Triple> t;
    for (const auto& e : g.edges()) t.push_back(dtile::make_triple(perm[e[0]], perm[e[1]], perm[e[2]]));
    return dtile::Hypergraph3::build(g.n(), t);
}

inline dtile::VertexSet set_of(int n, std::initializer_list<int> vs) {
    dtile::VertexSet s(n);
    for (int v : vs) s.set(v);
    return s;
}

}  // namespace support
