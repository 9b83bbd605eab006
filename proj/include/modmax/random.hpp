#pragma once

// Seeded randomness helpers. std::shuffle and the std distributions are
// implementation-defined, so index draws and shuffles are hand-rolled here to
// keep seeded runs reproducible across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace modmax {

using Rng = std::mt19937_64;

// Uniform draw from [0, n) by rejection, unbiased.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

inline double uniform_real(Rng& rng) {
    return (rng() >> 11) * 0x1.0p-53;  // 53 random bits in [0, 1)
}

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

// Discrete truncated power law on {lo, ..., hi} with P(x) proportional to
// x^-exponent, sampled by inverse CDF.
class TruncatedPowerLaw {
public:
    TruncatedPowerLaw(int lo, int hi, double exponent) : lo_(lo) {
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad power-law support");
        cdf_.reserve(hi - lo + 1);
        double total = 0.0;
        for (int x = lo; x <= hi; ++x) {
            total += std::pow(static_cast<double>(x), -exponent);
            cdf_.push_back(total);
        }
        for (double& c : cdf_) c /= total;
        cdf_.back() = 1.0;
    }

    int sample(Rng& rng) const {
        double u = uniform_real(rng);
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return lo_ + static_cast<int>(it - cdf_.begin());
    }

private:
    int lo_;
    std::vector<double> cdf_;
};

}  // namespace modmax
