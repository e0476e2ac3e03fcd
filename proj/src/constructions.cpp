#include "dtile/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "dtile/errors.hpp"
#include "dtile/rng.hpp"

namespace dtile {

std::string to_string(ConstructionKind kind) {
    switch (kind) {
        case ConstructionKind::G0: return "g0";
        case ConstructionKind::G1: return "g1";
        case ConstructionKind::complete: return "complete";
        case ConstructionKind::complete_3partite: return "tripartite";
        case ConstructionKind::sts: return "sts";
        case ConstructionKind::random_codegree: return "random";
        case ConstructionKind::planted_extremal: return "planted";
    }
    return "?";
}

ConstructionKind parse_construction_kind(const std::string& name) {
    for (auto k : {ConstructionKind::G0, ConstructionKind::G1, ConstructionKind::complete, ConstructionKind::complete_3partite,
                   ConstructionKind::sts, ConstructionKind::random_codegree, ConstructionKind::planted_extremal})
        if (to_string(k) == name) return k;
    throw InputError("unknown construction kind '" + name + "'");
}

Hypergraph3 generate(const ConstructionSpec& spec) {
    switch (spec.kind) {
        case ConstructionKind::G0: return construct_G0(spec.n);
        case ConstructionKind::G1: return construct_G1(spec.n);
        case ConstructionKind::complete: return complete_3graph(spec.n);
        case ConstructionKind::complete_3partite:
            if (spec.n < 3 || spec.n % 3 != 0) throw InputError("tripartite needs n divisible by 3");
            return complete_3partite(spec.n / 3, spec.n / 3, spec.n / 3);
        case ConstructionKind::sts: return steiner_triple_system(spec.n);
        case ConstructionKind::random_codegree: return random_codegree_instance(spec.n, spec.target_codegree, spec.seed).graph;
        case ConstructionKind::planted_extremal: return planted_extremal(spec.n);
    }
    throw InputError("unknown construction kind");
}

namespace {

/// Triples on {0..m-1}, shifted by `offset`.
std::vector<Triple> sts_blocks(int m, int offset) {
    std::vector<Triple> blocks;
    auto add = [&](int a, int b, int c) { blocks.push_back(make_triple(a + offset, b + offset, c + offset)); };
    if (m % 6 == 3) {
        // Bose: idempotent commutative quasigroup x∘y = (x+y)(q+1)/2 on Z_q, q = m/3 odd.
        const int q = m / 3;
        auto pt = [q](int x, int i) { return x + q * (i % 3); };
        auto op = [q](int x, int y) { return static_cast<int>((static_cast<long long>(x + y) * ((q + 1) / 2)) % q); };
        for (int x = 0; x < q; ++x) add(pt(x, 0), pt(x, 1), pt(x, 2));
        for (int x = 0; x < q; ++x)
            for (int y = x + 1; y < q; ++y)
                for (int i = 0; i < 3; ++i) add(pt(x, i), pt(y, i), pt(op(x, y), i + 1));
    } else {
        // Skolem: half-idempotent commutative quasigroup on Z_{2h}, h = (m-1)/6,
        // obtained from the addition table by renaming 2j -> j, 2j+1 -> h+j.
        const int h = (m - 1) / 6;
        const int two_h = 2 * h;
        const int inf = m - 1;
        auto pt = [two_h](int x, int i) { return x + two_h * (i % 3); };
        auto op = [h, two_h](int x, int y) {
            int s = (x + y) % two_h;
            return s % 2 == 0 ? s / 2 : h + s / 2;
        };
        for (int x = 0; x < h; ++x) add(pt(x, 0), pt(x, 1), pt(x, 2));
        for (int x = 0; x < h; ++x)
            for (int i = 0; i < 3; ++i) add(inf, pt(x + h, i), pt(x, i + 1));
        for (int x = 0; x < two_h; ++x)
            for (int y = x + 1; y < two_h; ++y)
                for (int i = 0; i < 3; ++i) add(pt(x, i), pt(y, i), pt(op(x, y), i + 1));
    }
    return blocks;
}

/// All triples on 0..n-1 that meet {0..a-1}.
std::vector<Triple> triples_meeting_prefix(int n, int a) {
    std::vector<Triple> out;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                if (x < a) out.push_back({x, y, z});
    return out;
}

}  // namespace

Hypergraph3 steiner_triple_system(int m) {
    if (m < 3 || (m % 6 != 1 && m % 6 != 3))
        throw UnsupportedOrder("no Steiner triple system of order " + std::to_string(m) + " (need m = 1 or 3 mod 6, m >= 3)");
    auto blocks = sts_blocks(m, 0);
    return Hypergraph3::build(m, blocks);
}

Hypergraph3 construct_G0(int n) {
    if (n < 4 || n % 4 != 0) throw InputError("G0 needs n divisible by 4, got " + std::to_string(n));
    return Hypergraph3::build(n, triples_meeting_prefix(n, n / 4 - 1));
}

Hypergraph3 construct_G1(int n) {
    if (n < 4 || n % 4 != 0 || (n / 4) % 2 != 0) throw InputError("G1 needs n divisible by 4 with n/4 even, got " + std::to_string(n));
    const int a = n / 4 - 1;
    auto triples = triples_meeting_prefix(n, a);
    auto blocks = sts_blocks(n - a, a);
    triples.insert(triples.end(), blocks.begin(), blocks.end());
    return Hypergraph3::build(n, triples);
}

Hypergraph3 planted_extremal(int n) {
    if (n < 4 || n % 4 != 0) throw InputError("planted_extremal needs n divisible by 4, got " + std::to_string(n));
    return Hypergraph3::build(n, triples_meeting_prefix(n, n / 4));
}

Hypergraph3 complete_3graph(int n) {
    if (n < 3) throw InputError("complete 3-graph needs n >= 3");
    return Hypergraph3::build(n, triples_meeting_prefix(n, n));
}

Hypergraph3 complete_3partite(int a, int b, int c) {
    if (a < 1 || b < 1 || c < 1) throw InputError("complete 3-partite needs non-empty parts");
    std::vector<Triple> triples;
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y)
            for (int z = 0; z < c; ++z) triples.push_back({x, a + y, a + b + z});
    return Hypergraph3::build(a + b + c, triples);
}

RandomInstance random_codegree_instance(int n, int d, std::uint64_t seed) {
    if (n < 0) throw InputError("negative vertex count");
    if (d < 0 || (n >= 2 && d > n - 2)) throw InputError("target codegree must lie in 0..n-2");
    RandomInstance out;
    Rng rng(seed);
    if (d > 0) {
        const double margin = 2.0 * std::sqrt(static_cast<double>(d));
        out.edge_probability = std::min(1.0, (d + margin) / static_cast<double>(n - 2));
    }
    const auto nn = static_cast<std::size_t>(n);
    std::vector<int> codeg(nn * nn, 0);
    std::vector<Triple> triples;
    // membership of sorted triples, n^3 bytes
    std::vector<std::uint8_t> cube(nn * nn * nn, 0);
    auto at = [&](int x, int y, int z) -> std::uint8_t& {
        return cube[(static_cast<std::size_t>(x) * nn + static_cast<std::size_t>(y)) * nn + static_cast<std::size_t>(z)];
    };
    auto add = [&](int x, int y, int z) {
        Triple t = make_triple(x, y, z);
        at(t[0], t[1], t[2]) = 1;
        triples.push_back(t);
        ++codeg[static_cast<std::size_t>(t[0]) * nn + static_cast<std::size_t>(t[1])];
        ++codeg[static_cast<std::size_t>(t[0]) * nn + static_cast<std::size_t>(t[2])];
        ++codeg[static_cast<std::size_t>(t[1]) * nn + static_cast<std::size_t>(t[2])];
    };
    if (out.edge_probability > 0.0)
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = y + 1; z < n; ++z)
                    if (rng.bernoulli(out.edge_probability)) add(x, y, z);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int& c = codeg[static_cast<std::size_t>(u) * nn + static_cast<std::size_t>(v)];
            if (c >= d) continue;
            std::vector<int> candidates;
            for (int w = 0; w < n; ++w) {
                if (w == u || w == v) continue;
                Triple t = make_triple(u, v, w);
                if (!at(t[0], t[1], t[2])) candidates.push_back(w);
            }
            rng.shuffle(candidates);
            for (std::size_t i = 0; c < d && i < candidates.size(); ++i) {
                add(u, v, candidates[i]);
                ++out.repairs;
            }
        }
    out.graph = Hypergraph3::build(n, triples);
    return out;
}

}  // namespace dtile
