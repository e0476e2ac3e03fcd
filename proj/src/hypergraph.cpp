#include "dtile/hypergraph.hpp"

#include <algorithm>
#include <limits>

#include "dtile/errors.hpp"

namespace dtile {

namespace {

std::string describe(const Triple& t) {
    return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

std::string describe(const DCopy& d) {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) s += (i ? " " : "") + std::to_string(d.vertices[static_cast<std::size_t>(i)]);
    return s + "]";
}

}  // namespace

Triple make_triple(Vertex a, Vertex b, Vertex c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

Hypergraph3 Hypergraph3::build(int n, std::span<const Triple> triples) {
    if (n < 0) throw InputError("negative vertex count");
    Hypergraph3 g;
    g.n_ = n;
    g.edges_.reserve(triples.size());
    for (const Triple& raw : triples) {
        Triple t = make_triple(raw[0], raw[1], raw[2]);
        if (t[0] < 0 || t[2] >= n) throw InputError("triple " + describe(raw) + " has a vertex outside 0.." + std::to_string(n - 1));
        if (t[0] == t[1] || t[1] == t[2]) throw InputError("triple " + describe(raw) + " is degenerate");
        g.edges_.push_back(t);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.pair_index_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), VertexSet(n));
    g.degrees_.assign(static_cast<std::size_t>(n), 0);
    for (const Triple& t : g.edges_) {
        auto [a, b, c] = t;
        g.pair_index_[g.index(a, b)].set(c);
        g.pair_index_[g.index(b, a)].set(c);
        g.pair_index_[g.index(a, c)].set(b);
        g.pair_index_[g.index(c, a)].set(b);
        g.pair_index_[g.index(b, c)].set(a);
        g.pair_index_[g.index(c, b)].set(a);
        ++g.degrees_[static_cast<std::size_t>(a)];
        ++g.degrees_[static_cast<std::size_t>(b)];
        ++g.degrees_[static_cast<std::size_t>(c)];
    }
    return g;
}

bool Hypergraph3::has_edge(Vertex a, Vertex b, Vertex c) const {
    if (a == b || a == c || b == c) return false;
    if (a < 0 || b < 0 || c < 0 || a >= n_ || b >= n_ || c >= n_) return false;
    return pair_index_[index(a, b)].test(c);
}

int Hypergraph3::codegree(Vertex u, Vertex v) const {
    if (u == v) throw InputError("codegree of a vertex with itself");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("codegree: vertex out of range");
    return pair_index_[index(u, v)].count();
}

int Hypergraph3::min_codegree() const {
    if (n_ < 2) return 0;
    int best = std::numeric_limits<int>::max();
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v) best = std::min(best, pair_index_[index(u, v)].count());
    return best;
}

int Hypergraph3::max_codegree() const {
    int best = 0;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v) best = std::max(best, pair_index_[index(u, v)].count());
    return best;
}

InducedSubgraph induced_subgraph(const Hypergraph3& g, std::span<const Vertex> vertices) {
    std::vector<Vertex> local(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<Vertex>(i);
    std::vector<Triple> triples;
    const auto k = vertices.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const VertexSet& nb = g.neighbours(vertices[i], vertices[j]);
            for (std::size_t l = j + 1; l < k; ++l)
                if (nb.test(vertices[l]))
                    triples.push_back(make_triple(static_cast<Vertex>(i), static_cast<Vertex>(j), static_cast<Vertex>(l)));
        }
    return {Hypergraph3::build(static_cast<int>(k), triples), std::vector<Vertex>(vertices.begin(), vertices.end())};
}

DCopy DCopy::from_pair(Vertex u, Vertex v, Vertex w1, Vertex w2) {
    DCopy d;
    d.vertices = {u, v, w1, w2};
    std::sort(d.vertices.begin(), d.vertices.end());
    d.edge_a = make_triple(u, v, w1);
    d.edge_b = make_triple(u, v, w2);
    if (d.edge_b < d.edge_a) std::swap(d.edge_a, d.edge_b);
    return d;
}

DCopy DCopy::from_edges(const Triple& a, const Triple& b) {
    Triple x = make_triple(a[0], a[1], a[2]);
    Triple y = make_triple(b[0], b[1], b[2]);
    std::vector<Vertex> shared;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(shared));
    if (shared.size() != 2) throw InputError("edges " + describe(x) + " and " + describe(y) + " do not share exactly two vertices");
    std::vector<Vertex> all;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(all));
    DCopy d;
    std::copy(all.begin(), all.end(), d.vertices.begin());
    d.edge_a = std::min(x, y);
    d.edge_b = std::max(x, y);
    return d;
}

bool spans_D(const Hypergraph3& g, const std::array<Vertex, 4>& q) {
    int edges = 0;
    edges += g.has_edge(q[0], q[1], q[2]);
    edges += g.has_edge(q[0], q[1], q[3]);
    if (edges == 0) return g.has_edge(q[0], q[2], q[3]) && g.has_edge(q[1], q[2], q[3]);
    edges += g.has_edge(q[0], q[2], q[3]);
    if (edges >= 2) return true;
    return g.has_edge(q[1], q[2], q[3]);
}

DCopy witness_on_quad(const Hypergraph3& g, std::array<Vertex, 4> q) {
    std::sort(q.begin(), q.end());
    // 3-subsets in lexicographic order
    const std::array<Triple, 4> subsets = {Triple{q[0], q[1], q[2]}, Triple{q[0], q[1], q[3]}, Triple{q[0], q[2], q[3]},
                                           Triple{q[1], q[2], q[3]}};
    std::vector<Triple> present;
    for (const auto& t : subsets)
        if (g.has_edge(t)) present.push_back(t);
    if (present.size() < 2) throw InputError("quad does not span a copy of D");
    return DCopy::from_edges(present[0], present[1]);
}

VertexSet Tiling::covered(int n) const {
    VertexSet s(n);
    for (const auto& d : copies)
        for (Vertex v : d.vertices)
            if (v >= 0 && v < n) s.set(v);
    return s;
}

void Tiling::normalize() { std::sort(copies.begin(), copies.end()); }

bool for_each_D_copy(const Hypergraph3& g, const VertexSet& within, const std::function<bool(const DCopy&)>& visit) {
    for (Vertex u = within.first(); u >= 0; u = within.next(u + 1))
        for (Vertex v = within.next(u + 1); v >= 0; v = within.next(v + 1)) {
            VertexSet nb = g.neighbours(u, v) & within;
            for (Vertex w1 = nb.first(); w1 >= 0; w1 = nb.next(w1 + 1))
                for (Vertex w2 = nb.next(w1 + 1); w2 >= 0; w2 = nb.next(w2 + 1))
                    if (!visit(DCopy::from_pair(u, v, w1, w2))) return false;
        }
    return true;
}

std::vector<DCopy> enumerate_D_copies(const Hypergraph3& g, const std::optional<VertexSet>& within) {
    std::vector<DCopy> out;
    const VertexSet scope = within ? *within : VertexSet::full(g.n());
    for_each_D_copy(g, scope, [&](const DCopy& d) {
        out.push_back(d);
        return true;
    });
    return out;
}

bool is_D_free(const Hypergraph3& g, const VertexSet& s) {
    if (s.count() < 4) return true;
    for (Vertex u = s.first(); u >= 0; u = s.next(u + 1))
        for (Vertex v = s.next(u + 1); v >= 0; v = s.next(v + 1))
            if (g.neighbours(u, v).count_and(s) >= 2) return false;
    return true;
}

bool creates_D(const Hypergraph3& g, const VertexSet& s, Vertex v) {
    VertexSet with = s;
    with.set(v);
    for (Vertex x = s.first(); x >= 0; x = s.next(x + 1)) {
        if (x == v) continue;
        // v in the shared pair
        if (g.neighbours(v, x).count_and(with) >= 2) return true;
        // v private: some pair {x,y} of S has v and another S-vertex as neighbours
        VertexSet partners = g.neighbours(v, x) & s;
        for (Vertex y = partners.first(); y >= 0; y = partners.next(y + 1))
            if (y > x && g.neighbours(x, y).count_and(with) >= 2) return true;
    }
    return false;
}

std::vector<std::array<Vertex, 2>> link_of_vertex_on_set(const Hypergraph3& g, Vertex v, const VertexSet& w) {
    if (v < 0 || v >= g.n()) throw InputError("link: vertex out of range");
    if (w.test(v)) throw InputError("link: vertex " + std::to_string(v) + " lies in W");
    std::vector<std::array<Vertex, 2>> pairs;
    for (Vertex a = w.first(); a >= 0; a = w.next(a + 1)) {
        const VertexSet& nb = g.neighbours(v, a);
        for (Vertex b = w.next(a + 1); b >= 0; b = w.next(b + 1))
            if (nb.test(b)) pairs.push_back({a, b});
    }
    return pairs;
}

int link_size(const Hypergraph3& g, Vertex v, const VertexSet& w) {
    int twice = 0;
    w.for_each([&](Vertex a) {
        if (a != v) twice += g.neighbours(v, a).count_and(w);
    });
    return twice / 2;
}

Verdict validate_tiling(const Hypergraph3& g, const Tiling& t, bool require_perfect) {
    Verdict verdict;
    const int n = g.n();
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < t.copies.size(); ++i) {
        const DCopy& d = t.copies[i];
        const std::string tag = "copy " + std::to_string(i) + " " + describe(d);
        bool in_range = true;
        for (Vertex v : d.vertices)
            if (v < 0 || v >= n) in_range = false;
        if (!in_range) {
            verdict.fail("out-of-range vertex in " + tag);
            continue;
        }
        auto sorted = d.vertices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            verdict.fail("malformed copy: repeated vertex in " + tag);
            continue;
        }
        Triple a = make_triple(d.edge_a[0], d.edge_a[1], d.edge_a[2]);
        Triple b = make_triple(d.edge_b[0], d.edge_b[1], d.edge_b[2]);
        std::vector<Vertex> shared, all;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
        if (shared.size() != 2 || !std::equal(all.begin(), all.end(), sorted.begin(), sorted.end()))
            verdict.fail("malformed copy: witness edges do not form D on " + tag);
        for (const Triple& e : {a, b})
            if (!g.has_edge(e)) verdict.fail("missing edge " + describe(e) + " in " + tag);
        for (Vertex v : sorted) {
            auto& o = owner[static_cast<std::size_t>(v)];
            if (o >= 0)
                verdict.fail("overlap: vertex " + std::to_string(v) + " in copies " + std::to_string(o) + " and " + std::to_string(i));
            else
                o = static_cast<int>(i);
        }
    }
    if (require_perfect) {
        if (n % 4 != 0) verdict.fail("not perfect: n = " + std::to_string(n) + " is not divisible by 4");
        int uncovered = static_cast<int>(std::count(owner.begin(), owner.end(), -1));
        if (uncovered > 0) {
            auto first = std::find(owner.begin(), owner.end(), -1) - owner.begin();
            verdict.fail("not perfect: " + std::to_string(uncovered) + " uncovered vertices, first " + std::to_string(first));
        }
    }
    return verdict;
}

}  // namespace dtile
