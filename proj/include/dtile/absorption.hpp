#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtile/hypergraph.hpp"
#include "dtile/rng.hpp"

namespace dtile {

using EightSet = std::array<Vertex, 8>;
using FourSet = std::array<Vertex, 4>;

/// S absorbs U when both G[S] and G[S ∪ U] are perfectly D-tileable.
/// Throws InputError on overlapping or repeated vertices.
bool absorbs(const Hypergraph3& g, const EightSet& s, const FourSet& u);

/**
 * Absorber from a K(3,3,3) in the tripartite graph between
 *   W1 ⊆ N(u1,u2) \ {u3,u4},  W2 ⊆ N(u3,u4) \ (W1 ∪ {u1,u2}),
 *   W3 = (∪ N(v1,v2) over V1 × V2) \ (W1 ∪ W2 ∪ U).
 * W1 and W2 are random subsets of size max(3, ceil(δ₂(G)/3)) (all of V_i when
 * smaller). The copy's smallest W3-vertex is dropped; the other eight form
 * the absorber, which is re-verified with absorbs() before it is returned.
 */
std::optional<EightSet> find_absorber_gadget(const Hypergraph3& g, const FourSet& u, Rng& rng, int attempts = 8);

struct AbsorptionParams {
    double alpha = 0.3;                  // |A| <= alpha * n
    std::optional<double> sigma;         // absorber density; estimated when unset
    std::optional<double> p;             // sampling rate; derived from alpha, sigma when unset
    std::optional<double> omega;         // leftover bound; alpha * sigma^2 / 128 when unset
    std::uint64_t seed = 0;
    int max_retries = 64;
    int probe_size = 500;                // random 4-sets tried per member in deletion (b)
    bool strict = false;                 // full 4-set scan in deletion (b) (n <= 30)
    double min_codegree_fraction = 0.0;  // δ: warn when δ₂(G) < δn
};

struct AbsorberFamily {
    std::vector<EightSet> members;
    VertexSet A;
    std::vector<Tiling> tilings;  // perfect tiling of G[member], same order

    std::size_t size() const { return members.size(); }
};

struct FamilyStats {
    double sigma = 0.0;
    bool sigma_estimated = false;
    double p = 0.0;
    double omega = 0.0;
    int attempts = 0;
    std::uint64_t last_sampled = 0;
    std::uint64_t last_after_overlap = 0;
    std::uint64_t last_after_absorb = 0;
    std::vector<std::string> warnings;
};

/// Fraction of random disjoint (U, S) pairs with S absorbing U, floored at 1e-3.
double estimate_sigma(const Hypergraph3& g, Rng& rng, int samples = 200);

/// Sample 8-sets at rate p, drop every overlapping pair, keep sets that absorb
/// at least one probed 4-set; retry with fresh randomness while the family is
/// empty or |A| > alpha n. Throws ConstructionFailure after max_retries.
AbsorberFamily build_absorbing_family(const Hypergraph3& g, const AbsorptionParams& params, FamilyStats* stats = nullptr);

/// Post-hoc family checks: disjointness, |A| = 8m, cached tilings valid.
Verdict validate_family(const Hypergraph3& g, const AbsorberFamily& family);

/// Perfect tiling of G[A ∪ W]: W is cut into 4-sets in ascending order, each
/// matched first-fit to an unused absorbing member. Throws InputError on a
/// bad W and AbsorptionFailure when some 4-set finds no member.
Tiling absorb_leftover(const Hypergraph3& g, const AbsorberFamily& family, const VertexSet& w, double omega = 0.0,
                       std::vector<std::string>* warnings = nullptr);

/// Text dump: `family m alpha sigma seed`, m member lines, then m certificates.
void write_family(std::ostream& out, const AbsorberFamily& family, double alpha, double sigma, std::uint64_t seed);
AbsorberFamily read_family(std::istream& in, int n);

nlohmann::json to_json(const FamilyStats& s);

}  // namespace dtile
