#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dtile {

/**
 * Seeded generator used by every randomized routine.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The standard distributions are not, so the draws below are done
 * by hand to keep results bit-identical across standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit();

    bool bernoulli(double p) { return unit() < p; }

    /// Binomial(trials, p) by CDF inversion; falls back to a rounded normal
    /// approximation once the mean is too large for the inversion to be exact.
    std::uint64_t binomial(double trials, double p);

    /// k distinct values from [0, n) via partial Fisher-Yates, in draw order.
    std::vector<int> sample_distinct(int n, int k);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Child generator for an independent stream (SplitMix64 of a mixed key).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

private:
    std::mt19937_64 engine_;
};

}  // namespace dtile
