#include "dtile/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dtile {

std::uint64_t Rng::below(std::uint64_t bound) {
    // rejection on the top of the range keeps the draw unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    while (true) {
        std::uint64_t x = engine_();
        if (x < limit) return x % bound;
    }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::binomial(double trials, double p) {
    if (p <= 0.0 || trials < 1.0) return 0;
    if (p >= 1.0) return static_cast<std::uint64_t>(trials);
    const double mean = trials * p;
    if (mean > 400.0) {
        // Box-Muller; one uniform pair per draw
        const double u1 = 1.0 - unit();
        const double u2 = unit();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        const double x = std::round(mean + z * std::sqrt(mean * (1.0 - p)));
        return static_cast<std::uint64_t>(std::clamp(x, 0.0, trials));
    }
    double pmf = std::exp(trials * std::log1p(-p));
    double cdf = pmf;
    const double u = unit();
    const double ratio = p / (1.0 - p);
    std::uint64_t k = 0;
    while (u >= cdf && static_cast<double>(k) < trials) {
        pmf *= (trials - static_cast<double>(k)) / static_cast<double>(k + 1) * ratio;
        ++k;
        cdf += pmf;
        if (pmf == 0.0 && static_cast<double>(k) > mean) break;
    }
    return k;
}

std::vector<int> Rng::sample_distinct(int n, int k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k && i < n; ++i) {
        auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ b);
}

}  // namespace dtile
