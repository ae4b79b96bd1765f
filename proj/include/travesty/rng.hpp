#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "travesty/errors.hpp"

namespace travesty {

// SplitMix64 (Steele/Lea/Flood). Pure 64-bit integer arithmetic, so sequences are
// identical on every platform for a given seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Stream-splitting rule: substream k of a run seed is a fresh SplitMix64 seeded with
// the k-th output of SplitMix64(seed). Stream 0 drives signal draws, stream 1 mind-state
// draws; further streams are free for callers.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 root(seed);
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i <= stream; ++i) s = root.next();
    return SplitMix64(s);
}

// Inverse-CDF draw from a pmf laid out in index order. The pmf is assumed normalized;
// any trailing roundoff deficit goes to the last positive entry.
inline Eigen::Index sample_index(const Eigen::VectorXd& pmf, SplitMix64& rng) {
    TRAVESTY_INTERNAL_CHECK(pmf.size() > 0);
    const double u = rng.next_unit();
    double cum = 0.0;
    Eigen::Index last_positive = -1;
    for (Eigen::Index i = 0; i < pmf.size(); ++i) {
        if (pmf(i) <= 0.0) continue;
        last_positive = i;
        cum += pmf(i);
        if (u < cum) return i;
    }
    TRAVESTY_INTERNAL_CHECK(last_positive >= 0);
    return last_positive;
}

}  // namespace travesty
