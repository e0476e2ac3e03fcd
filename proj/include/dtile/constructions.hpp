#pragma once

#include <cstdint>
#include <string>

#include "dtile/hypergraph.hpp"

namespace dtile {

enum class ConstructionKind { G0, G1, complete, complete_3partite, sts, random_codegree, planted_extremal };

std::string to_string(ConstructionKind kind);
/// Accepts the CLI spellings: g0 g1 complete tripartite sts random planted.
ConstructionKind parse_construction_kind(const std::string& name);

struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::complete;
    int n = 0;
    std::uint64_t seed = 0;
    int target_codegree = 0;  // random_codegree only
};

/// Dispatches on spec.kind. complete_3partite uses three parts of size n/3.
Hypergraph3 generate(const ConstructionSpec& spec);

/// Bose construction for m ≡ 3 (mod 6), Skolem for m ≡ 1 (mod 6).
/// Throws UnsupportedOrder for any other m.
Hypergraph3 steiner_triple_system(int m);

/// A = {0 .. n/4-2}, B = the remaining 3n/4+1 vertices; every triple meeting A.
Hypergraph3 construct_G0(int n);
/// G0 plus a Steiner triple system on B; needs n/4 even.
Hypergraph3 construct_G1(int n);
/// Like G0 but |A| = n/4, which makes it perfectly D-tileable.
Hypergraph3 planted_extremal(int n);

Hypergraph3 complete_3graph(int n);
Hypergraph3 complete_3partite(int a, int b, int c);

struct RandomInstance {
    Hypergraph3 graph;
    double edge_probability = 0.0;
    std::size_t repairs = 0;  // edges added to lift deficient pairs
};

/// Binomial 3-graph at a rate whose expected codegree clears d with a margin,
/// then repaired pair by pair (lexicographic order) until min codegree >= d.
/// Deterministic in (n, d, seed).
RandomInstance random_codegree_instance(int n, int d, std::uint64_t seed);

}  // namespace dtile
