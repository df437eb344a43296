#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rig {

// Deterministic engine. mt19937_64 is fully specified by the standard, so
// streams reproduce across platforms; the variate generators below are
// hand-rolled because the standard library distributions are not portable.
using RngStream = std::mt19937_64;

// 64-bit avalanche finalizer (Murmur3 fmix64). Bijective.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

inline RngStream make_stream(std::uint64_t seed) { return RngStream{seed}; }

// Independent substream `index` of a master seed (replicates, MC batches).
inline RngStream make_substream(std::uint64_t seed, std::uint64_t index) {
    return RngStream{mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL))};
}

// Unbiased uniform draw from {0, ..., bound-1}; bound >= 1.
inline std::uint64_t uniform_below(RngStream& g, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = g();
        if (r >= threshold) return r % bound;
    }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(RngStream& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Exact Poisson sampling: cdf inversion below mean 10, and the additive split
// Poisson(m) = Poisson(m/2) + Poisson(m/2) above that. No normal
// approximation at any mean.
inline std::uint64_t sample_poisson(RngStream& g, double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
        double p = std::exp(-mean);
        double c = p;
        const double u = uniform01(g);
        std::uint64_t k = 0;
        while (u > c && k < 256) {
            ++k;
            p *= mean / static_cast<double>(k);
            c += p;
        }
        return k;
    }
    const std::uint64_t half = sample_poisson(g, mean * 0.5);
    return half + sample_poisson(g, mean * 0.5);
}

}  // namespace rig
