#pragma once

// Slow reference implementations over plain edge lists. They share no code
// with the library beyond the Triple type.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <vector>

#include "dtile/hypergraph.hpp"

namespace oracle {

using dtile::Triple;
using EdgeSet = std::set<Triple>;

inline Triple sorted(int a, int b, int c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

inline int codegree(const EdgeSet& e, int n, int u, int v) {
    int c = 0;
    for (int w = 0; w < n; ++w)
        if (w != u && w != v && e.count(sorted(u, v, w))) ++c;
    return c;
}

inline int min_codegree(const EdgeSet& e, int n) {
    int best = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) best = std::min(best, codegree(e, n, u, v));
    return n < 2 ? 0 : best;
}

/// Edge count on a 4-set.
inline int edges_on(const EdgeSet& e, int a, int b, int c, int d) {
    return int(e.count(sorted(a, b, c))) + int(e.count(sorted(a, b, d))) + int(e.count(sorted(a, c, d))) +
           int(e.count(sorted(b, c, d)));
}

/// Pairs of edges inside S that share exactly two vertices.
inline bool is_D_free(const EdgeSet& e, const std::vector<int>& s) {
    std::set<int> in(s.begin(), s.end());
    std::vector<Triple> inside;
    for (const Triple& t : e)
        if (in.count(t[0]) && in.count(t[1]) && in.count(t[2])) inside.push_back(t);
    for (std::size_t i = 0; i < inside.size(); ++i)
        for (std::size_t j = i + 1; j < inside.size(); ++j) {
            int shared = 0;
            for (int x : inside[i]) shared += int(std::count(inside[j].begin(), inside[j].end(), x));
            if (shared == 2) return false;
        }
    return true;
}

/// Maximum D-tiling size by memoised recursion over vertex bitmasks (n <= 20):
/// the lowest remaining vertex is either left out or placed in a quad.
inline int max_tiling_size(const EdgeSet& e, int n) {
    std::unordered_map<std::uint32_t, int> memo;
    std::function<int(std::uint32_t)> best = [&](std::uint32_t mask) -> int {
        if (std::popcount(mask) < 4) return 0;
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        const int v = std::countr_zero(mask);
        const std::uint32_t rest = mask & ~(1U << v);
        int r = best(rest);
        for (int a = v + 1; a < n; ++a) {
            if (!(rest >> a & 1U)) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!(rest >> b & 1U)) continue;
                for (int c = b + 1; c < n; ++c) {
                    if (!(rest >> c & 1U)) continue;
                    if (edges_on(e, v, a, b, c) >= 2) r = std::max(r, 1 + best(rest & ~(1U << a) & ~(1U << b) & ~(1U << c)));
                }
            }
        }
        memo[mask] = r;
        return r;
    };
    return best(n == 32 ? ~0U : (1U << n) - 1);
}

inline bool perfectly_tileable(const EdgeSet& e, int n) { return n % 4 == 0 && max_tiling_size(e, n) * 4 == n; }

/// Perfectly tileable on the given vertices only.
inline bool tileable_on(const EdgeSet& e, std::vector<int> vs) {
    std::sort(vs.begin(), vs.end());
    if (vs.size() % 4 != 0) return false;
    std::function<bool(std::vector<int>)> go = [&](std::vector<int> rest) -> bool {
        if (rest.empty()) return true;
        const int v = rest[0];
        for (std::size_t a = 1; a < rest.size(); ++a)
            for (std::size_t b = a + 1; b < rest.size(); ++b)
                for (std::size_t c = b + 1; c < rest.size(); ++c) {
                    if (edges_on(e, v, rest[a], rest[b], rest[c]) < 2) continue;
                    std::vector<int> next;
                    for (std::size_t i = 1; i < rest.size(); ++i)
                        if (i != a && i != b && i != c) next.push_back(rest[i]);
                    if (go(next)) return true;
                }
        return false;
    };
    return go(vs);
}

/// Largest D-free subset by scanning all 2^n subsets (n <= 16).
inline int max_D_free_size(const EdgeSet& e, int n) {
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        const int size = std::popcount(mask);
        if (size <= best) continue;
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1U) s.push_back(v);
        if (is_D_free(e, s)) best = size;
    }
    return best;
}

/// Perfect matching in a 4-partite 4-graph by trying all (m!)^3 assignments.
inline bool has_perfect_matching(int m, const std::vector<std::array<int, 4>>& edges) {
    std::set<std::array<int, 4>> es(edges.begin(), edges.end());
    std::vector<int> p1(m), p2(m), p3(m);
    for (int i = 0; i < m; ++i) p1[i] = p2[i] = p3[i] = i;
    do {
        do {
            do {
                bool ok = true;
                for (int i = 0; i < m && ok; ++i) ok = es.count({i, p1[i], p2[i], p3[i]}) > 0;
                if (ok) return true;
            } while (std::next_permutation(p3.begin(), p3.end()));
        } while (std::next_permutation(p2.begin(), p2.end()));
    } while (std::next_permutation(p1.begin(), p1.end()));
    return false;
}

inline EdgeSet edge_set(const dtile::Hypergraph3& g) { return EdgeSet(g.edges().begin(), g.edges().end()); }

}  // namespace oracle
