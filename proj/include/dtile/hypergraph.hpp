#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtile/vertex_set.hpp"

namespace dtile {

/// A 3-edge with vertices in ascending order.
using Triple = std::array<Vertex, 3>;

/// Sorts the three entries; does not validate.
Triple make_triple(Vertex a, Vertex b, Vertex c);

/**
 * Simple 3-uniform hypergraph on vertices 0..n-1.
 *
 * Immutable after construction. The pair index stores, for every unordered
 * pair {u,v}, the neighbourhood N(u,v) as a bitset of width n, so codegrees
 * and neighbourhood intersections are word operations.
 */
class Hypergraph3 {
public:
    Hypergraph3() = default;

    /// Deduplicates and canonicalises; throws InputError naming the first
    /// degenerate or out-of-range triple.
    static Hypergraph3 build(int n, std::span<const Triple> triples);

    int n() const { return n_; }
    const std::vector<Triple>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(Vertex a, Vertex b, Vertex c) const;
    bool has_edge(const Triple& t) const { return has_edge(t[0], t[1], t[2]); }

    /// N(u,v); u != v, both in range (unchecked).
    const VertexSet& neighbours(Vertex u, Vertex v) const { return pair_index_[index(u, v)]; }

    /// |N(u,v)|; throws InputError when u == v or out of range.
    int codegree(Vertex u, Vertex v) const;

    /// Minimum codegree over all pairs; 0 when n < 2.
    int min_codegree() const;
    int max_codegree() const;

    /// Number of edges containing v.
    int degree(Vertex v) const { return degrees_[static_cast<std::size_t>(v)]; }

private:
    std::size_t index(Vertex u, Vertex v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
    }

    int n_ = 0;
    std::vector<Triple> edges_;
    std::vector<VertexSet> pair_index_;
    std::vector<int> degrees_;
};

/// G[vertices], relabelled to 0..|vertices|-1 in the given order.
struct InducedSubgraph {
    Hypergraph3 graph;
    std::vector<Vertex> to_parent;
};

InducedSubgraph induced_subgraph(const Hypergraph3& g, std::span<const Vertex> vertices);

/**
 * Witness of a copy of D = K4^3 - 2e: two edges sharing exactly two vertices.
 * Canonical form: `vertices` sorted, edge_a < edge_b lexicographically.
 */
struct DCopy {
    std::array<Vertex, 4> vertices{};
    Triple edge_a{};
    Triple edge_b{};

    /// From a shared pair and two private vertices.
    static DCopy from_pair(Vertex u, Vertex v, Vertex w1, Vertex w2);
    /// From two edges; throws InputError unless they share exactly two vertices.
    static DCopy from_edges(const Triple& a, const Triple& b);

    friend bool operator==(const DCopy&, const DCopy&) = default;
    friend auto operator<=>(const DCopy&, const DCopy&) = default;
};

/// True when the quad's four 3-subsets contain at least two edges of g.
bool spans_D(const Hypergraph3& g, const std::array<Vertex, 4>& quad);

/// A D-copy on a quad that spans D, witnessed by the first two edges in
/// canonical order. Throws InputError when the quad does not span D.
DCopy witness_on_quad(const Hypergraph3& g, std::array<Vertex, 4> quad);

/// A (possibly partial) D-tiling. Disjointness is not enforced here; use
/// validate_tiling.
struct Tiling {
    std::vector<DCopy> copies;

    std::size_t size() const { return copies.size(); }
    /// Union of the copies' vertex sets, width n.
    VertexSet covered(int n) const;
    /// Copies sorted canonically.
    void normalize();

    friend bool operator==(const Tiling&, const Tiling&) = default;
};

struct Verdict {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string finding) {
        ok = false;
        violations.push_back(std::move(finding));
    }
};

/// Every unordered pair of distinct edges sharing exactly two vertices.
/// Order: by shared pair, then by private pair.
std::vector<DCopy> enumerate_D_copies(const Hypergraph3& g, const std::optional<VertexSet>& within = std::nullopt);

/// Streams the same sequence as enumerate_D_copies; stops when `visit`
/// returns false. Returns false iff stopped early.
bool for_each_D_copy(const Hypergraph3& g, const VertexSet& within, const std::function<bool(const DCopy&)>& visit);

/// True iff G[S] has no copy of D.
bool is_D_free(const Hypergraph3& g, const VertexSet& s);

/// True iff S ∪ {v} contains a D-copy through v; S itself is assumed D-free.
bool creates_D(const Hypergraph3& g, const VertexSet& s, Vertex v);

/// Pairs {w,w'} ⊆ W with {v,w,w'} an edge; throws InputError when v ∈ W.
std::vector<std::array<Vertex, 2>> link_of_vertex_on_set(const Hypergraph3& g, Vertex v, const VertexSet& w);

/// |H_v[W]|, the number of link pairs of v inside W.
int link_size(const Hypergraph3& g, Vertex v, const VertexSet& w);

Verdict validate_tiling(const Hypergraph3& g, const Tiling& t, bool require_perfect);

}  // namespace dtile
