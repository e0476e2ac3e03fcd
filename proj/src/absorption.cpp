#include "dtile/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtile/errors.hpp"
#include "dtile/exact.hpp"
#include "dtile/io.hpp"

namespace dtile {

namespace {

template <std::size_t N>
std::string describe(const std::array<Vertex, N>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < N; ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

template <std::size_t N>
VertexSet as_set(int n, const std::array<Vertex, N>& s) {
    VertexSet out(n);
    for (Vertex v : s) out.set(v);
    return out;
}

bool tileable(const Hypergraph3& g, const VertexSet& s) { return perfect_tiling_exact(g, s).status == SearchStatus::found; }

double choose(double n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Random k-subset of `pool`, sorted.
std::vector<Vertex> random_subset(const std::vector<Vertex>& pool, std::size_t k, Rng& rng) {
    std::vector<Vertex> out;
    for (int idx : rng.sample_distinct(static_cast<int>(pool.size()), static_cast<int>(std::min(k, pool.size()))))
        out.push_back(pool[static_cast<std::size_t>(idx)]);
    std::sort(out.begin(), out.end());
    return out;
}

/// K(3,3,3) with parts in w1, w2, w3, searched from each pivot of w1 in random order.
std::optional<std::array<std::array<Vertex, 3>, 3>> find_k333(const Hypergraph3& g, const std::vector<Vertex>& w1,
                                                              const std::vector<Vertex>& w2, const VertexSet& w3, Rng& rng) {
    std::vector<Vertex> pivots = w1;
    rng.shuffle(pivots);
    for (Vertex a1 : pivots)
        for (std::size_t i = 0; i < w2.size(); ++i)
            for (std::size_t j = i + 1; j < w2.size(); ++j)
                for (std::size_t l = j + 1; l < w2.size(); ++l) {
                    const std::array<Vertex, 3> bs{w2[i], w2[j], w2[l]};
                    VertexSet common = w3;
                    for (Vertex b : bs) common &= g.neighbours(a1, b);
                    if (common.count() < 3) continue;
                    for (std::size_t x = 0; x < w1.size(); ++x)
                        for (std::size_t y = x + 1; y < w1.size(); ++y) {
                            const Vertex a2 = w1[x], a3 = w1[y];
                            if (a2 == a1 || a3 == a1) continue;
                            VertexSet c = common;
                            for (Vertex b : bs) {
                                c &= g.neighbours(a2, b);
                                c &= g.neighbours(a3, b);
                            }
                            if (c.count() < 3) continue;
                            std::array<Vertex, 3> as{a1, a2, a3};
                            std::sort(as.begin(), as.end());
                            Vertex c0 = c.first(), c1 = c.next(c0 + 1), c2 = c.next(c1 + 1);
                            return std::array<std::array<Vertex, 3>, 3>{as, bs, std::array<Vertex, 3>{c0, c1, c2}};
                        }
                }
    return std::nullopt;
}

}  // namespace

bool absorbs(const Hypergraph3& g, const EightSet& s, const FourSet& u) {
    const int n = g.n();
    VertexSet seen(n);
    auto take = [&](Vertex v) {
        if (v < 0 || v >= n) throw InputError("absorbs: vertex " + std::to_string(v) + " out of range");
        if (seen.test(v)) throw InputError("absorbs: S and U must be disjoint sets of distinct vertices");
        seen.set(v);
    };
    for (Vertex v : s) take(v);
    for (Vertex v : u) take(v);
    return tileable(g, as_set(n, s)) && tileable(g, seen);
}

std::optional<EightSet> find_absorber_gadget(const Hypergraph3& g, const FourSet& u, Rng& rng, int attempts) {
    const int n = g.n();
    for (Vertex x : u)
        if (x < 0 || x >= n) throw InputError("find_absorber_gadget: vertex out of range");
    const VertexSet uset = as_set(n, u);
    if (uset.count() != 4) throw InputError("find_absorber_gadget: U needs four distinct vertices");
    const VertexSet& v1 = g.neighbours(u[0], u[1]);
    const VertexSet& v2 = g.neighbours(u[2], u[3]);
    VertexSet v3(n);
    v1.for_each([&](Vertex a) { v2.for_each([&](Vertex b) {
        if (a != b) v3 |= g.neighbours(a, b);
    }); });
    const auto target = static_cast<std::size_t>(std::max(3, (g.min_codegree() + 2) / 3));
    VertexSet v1_pool = v1;
    v1_pool.reset(u[2]);
    v1_pool.reset(u[3]);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        auto w1 = random_subset(v1_pool.to_vector(), target, rng);
        VertexSet v2_pool = v2 - VertexSet::of(n, w1);
        v2_pool.reset(u[0]);
        v2_pool.reset(u[1]);
        auto w2 = random_subset(v2_pool.to_vector(), target, rng);
        VertexSet w3 = v3 - VertexSet::of(n, w1) - VertexSet::of(n, w2) - uset;
        if (w1.size() < 3 || w2.size() < 3 || w3.count() < 3) {
            // pools too small for any draw
            if (v1_pool.count() < 3 || v2_pool.count() < 3) return std::nullopt;
            continue;
        }
        auto k = find_k333(g, w1, w2, w3, rng);
        if (!k) continue;
        const auto& [as, bs, cs] = *k;
        // cs[0] is the dropped pivot of W3
        EightSet s{as[0], as[1], as[2], bs[0], bs[1], bs[2], cs[1], cs[2]};
        std::sort(s.begin(), s.end());
        if (absorbs(g, s, u)) return s;
    }
    return std::nullopt;
}

double estimate_sigma(const Hypergraph3& g, Rng& rng, int samples) {
    const int n = g.n();
    if (n < 12 || samples <= 0) return 1e-3;
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        auto draw = rng.sample_distinct(n, 12);
        FourSet u{draw[0], draw[1], draw[2], draw[3]};
        EightSet s{};
        std::copy(draw.begin() + 4, draw.end(), s.begin());
        std::sort(u.begin(), u.end());
        std::sort(s.begin(), s.end());
        hits += absorbs(g, s, u);
    }
    return std::max(1e-3, static_cast<double>(hits) / samples);
}

AbsorberFamily build_absorbing_family(const Hypergraph3& g, const AbsorptionParams& params, FamilyStats* stats_out) {
    const int n = g.n();
    FamilyStats stats;
    if (n < 12) throw ConstructionFailure("absorbing family needs at least 12 vertices");
    Rng rng(params.seed);
    stats.sigma_estimated = !params.sigma.has_value();
    stats.sigma = params.sigma ? *params.sigma : estimate_sigma(g, rng);
    const double c8 = choose(n, 8);
    stats.p = params.p ? *params.p : params.alpha * stats.sigma * n / (16.0 * c8);
    stats.omega = params.omega ? *params.omega : params.alpha * stats.sigma * stats.sigma / 128.0;
    if (g.min_codegree() < params.min_codegree_fraction * n)
        stats.warnings.push_back("min codegree " + std::to_string(g.min_codegree()) + " is below delta * n");

    const bool strict = params.strict && n <= 30;
    for (int attempt = 1; attempt <= params.max_retries; ++attempt) {
        stats.attempts = attempt;
        const auto count = rng.binomial(c8, stats.p);
        std::vector<EightSet> sampled;
        for (std::uint64_t i = 0; i < count; ++i) {
            auto d = rng.sample_distinct(n, 8);
            EightSet s{};
            std::copy(d.begin(), d.end(), s.begin());
            std::sort(s.begin(), s.end());
            sampled.push_back(s);
        }
        stats.last_sampled = sampled.size();

        // (a) drop every set meeting another sampled set (identical draws included)
        std::vector<int> hits(static_cast<std::size_t>(n), 0);
        for (const auto& s : sampled)
            for (Vertex v : s) ++hits[static_cast<std::size_t>(v)];
        std::vector<EightSet> isolated;
        for (const auto& s : sampled)
            if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return hits[static_cast<std::size_t>(v)] == 1; })) isolated.push_back(s);
        std::sort(isolated.begin(), isolated.end());
        stats.last_after_overlap = isolated.size();

        // (b) keep D-tileable sets that absorb some probed 4-set
        AbsorberFamily fam;
        fam.A = VertexSet(n);
        for (const auto& s : isolated) {
            const VertexSet sset = as_set(n, s);
            auto own = perfect_tiling_exact(g, sset);
            if (own.status != SearchStatus::found) continue;
            const auto outside = (VertexSet::full(n) - sset).to_vector();
            bool absorbing = false;
            if (strict) {
                const auto m = outside.size();
                for (std::size_t a = 0; a < m && !absorbing; ++a)
                    for (std::size_t b = a + 1; b < m && !absorbing; ++b)
                        for (std::size_t c = b + 1; c < m && !absorbing; ++c)
                            for (std::size_t d = c + 1; d < m && !absorbing; ++d)
                                absorbing = absorbs(g, s, {outside[a], outside[b], outside[c], outside[d]});
            } else {
                const int probes = static_cast<int>(std::min<double>(choose(static_cast<double>(outside.size()), 4), params.probe_size));
                for (int i = 0; i < probes && !absorbing; ++i) {
                    auto idx = rng.sample_distinct(static_cast<int>(outside.size()), 4);
                    FourSet u{};
                    for (std::size_t j = 0; j < 4; ++j) u[j] = outside[static_cast<std::size_t>(idx[j])];
                    std::sort(u.begin(), u.end());
                    absorbing = absorbs(g, s, u);
                }
            }
            if (!absorbing) continue;
            fam.members.push_back(s);
            fam.tilings.push_back(*own.tiling);
            fam.A |= sset;
        }
        stats.last_after_absorb = fam.members.size();
        if (fam.members.empty() || fam.A.count() > params.alpha * n) continue;
        Verdict v = validate_family(g, fam);
        if (!v.ok) throw std::logic_error("absorbing family failed validation: " + v.violations.front());
        if (stats_out) *stats_out = stats;
        return fam;
    }
    if (stats_out) *stats_out = stats;
    throw ConstructionFailure("no usable absorbing family after " + std::to_string(params.max_retries) + " attempts (p = " +
                              std::to_string(stats.p) + ", last draw " + std::to_string(stats.last_sampled) + " sampled, " +
                              std::to_string(stats.last_after_overlap) + " isolated, " + std::to_string(stats.last_after_absorb) + " absorbing)");
}

Verdict validate_family(const Hypergraph3& g, const AbsorberFamily& f) {
    Verdict v;
    const int n = g.n();
    VertexSet all(n);
    int total = 0;
    if (f.tilings.size() != f.members.size()) v.fail("family has " + std::to_string(f.tilings.size()) + " cached tilings for " + std::to_string(f.members.size()) + " members");
    for (std::size_t i = 0; i < f.members.size(); ++i) {
        const auto& s = f.members[i];
        const VertexSet sset = as_set(n, s);
        if (sset.count() != 8) v.fail("member " + describe(s) + " does not have 8 distinct vertices");
        if (sset.intersects(all)) v.fail("member " + describe(s) + " overlaps an earlier member");
        all |= sset;
        total += 8;
        if (i < f.tilings.size()) {
            const Tiling& t = f.tilings[i];
            Verdict tv = validate_tiling(g, t, false);
            if (!tv.ok || t.size() != 2 || !(t.covered(n) == sset)) v.fail("cached tiling of member " + describe(s) + " is not a perfect tiling of it");
        }
    }
    if (!(all == f.A) || f.A.count() != total) v.fail("A is not the disjoint union of the members");
    return v;
}

Tiling absorb_leftover(const Hypergraph3& g, const AbsorberFamily& f, const VertexSet& w, double omega, std::vector<std::string>* warnings) {
    const int n = g.n();
    if (w.intersects(f.A)) throw InputError("absorb_leftover: W meets the absorbing set A");
    if ((w.count() + f.A.count()) % 4 != 0) throw InputError("absorb_leftover: |A ∪ W| is not divisible by 4");
    if (warnings && omega > 0.0 && w.count() > omega * n)
        warnings->push_back("|W| = " + std::to_string(w.count()) + " exceeds omega * n = " + std::to_string(omega * n));
    const auto wv = w.to_vector();
    std::vector<std::uint8_t> used(f.members.size(), 0);
    Tiling out;
    for (std::size_t i = 0; i < wv.size(); i += 4) {
        const FourSet part{wv[i], wv[i + 1], wv[i + 2], wv[i + 3]};
        bool placed = false;
        for (std::size_t j = 0; j < f.members.size() && !placed; ++j) {
            if (used[j] || !absorbs(g, f.members[j], part)) continue;
            VertexSet joint = as_set(n, f.members[j]) | as_set(n, part);
            auto res = perfect_tiling_exact(g, joint);
            if (res.status != SearchStatus::found) throw std::logic_error("absorbs() held but the joint tiling was not found");
            out.copies.insert(out.copies.end(), res.tiling->copies.begin(), res.tiling->copies.end());
            used[j] = 1;
            placed = true;
        }
        if (!placed) throw AbsorptionFailure("no unused member absorbs " + describe(part));
    }
    for (std::size_t j = 0; j < f.members.size(); ++j)
        if (!used[j]) out.copies.insert(out.copies.end(), f.tilings[j].copies.begin(), f.tilings[j].copies.end());
    out.normalize();
    Verdict v = validate_tiling(g, out, false);
    if (!v.ok || !(out.covered(n) == (f.A | w))) throw std::logic_error("absorb_leftover produced a tiling that does not cover A ∪ W exactly");
    return out;
}

void write_family(std::ostream& out, const AbsorberFamily& f, double alpha, double sigma, std::uint64_t seed) {
    out << "family " << f.members.size() << ' ' << alpha << ' ' << sigma << ' ' << seed << '\n';
    for (const auto& s : f.members) {
        for (std::size_t i = 0; i < 8; ++i) out << (i ? " " : "") << s[i];
        out << '\n';
    }
    for (const auto& t : f.tilings) write_certificate(out, t, true);
}

AbsorberFamily read_family(std::istream& in, int n) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] != '#') lines.push_back(line);
    }
    std::size_t at = 0;
    auto next = [&]() -> const std::string& {
        if (at >= lines.size()) throw InputError("family dump ends early");
        return lines[at++];
    };
    std::istringstream header(next());
    std::string tag;
    long long m = -1;
    if (!(header >> tag >> m) || tag != "family" || m < 0) throw InputError("family dump: expected 'family m alpha sigma seed'");
    AbsorberFamily f;
    f.A = VertexSet(n);
    for (long long i = 0; i < m; ++i) {
        std::istringstream ls(next());
        EightSet s{};
        for (auto& v : s)
            if (!(ls >> v) || v < 0 || v >= n) throw InputError("family dump: bad member line");
        f.members.push_back(s);
        f.A |= as_set(n, s);
    }
    for (long long i = 0; i < m; ++i) {
        std::string block = next() + "\n";
        std::istringstream h(block);
        std::string kind;
        long long s = 0;
        h >> kind >> s;
        for (long long j = 0; j < s; ++j) block += next() + "\n";
        std::istringstream cert(block);
        f.tilings.push_back(read_certificate(cert).tiling);
    }
    if (at != lines.size()) throw InputError("family dump: trailing content");
    return f;
}

nlohmann::json to_json(const FamilyStats& s) {
    return {{"sigma", s.sigma},         {"sigma_estimated", s.sigma_estimated},   {"p", s.p},
            {"omega", s.omega},         {"attempts", s.attempts},                 {"last_sampled", s.last_sampled},
            {"last_isolated", s.last_after_overlap}, {"last_absorbing", s.last_after_absorb}, {"warnings", s.warnings}};
}

}  // namespace dtile
