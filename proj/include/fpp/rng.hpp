#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fpp {

// Seed mixing and portable sampling primitives.
//
// Every random quantity in the library is derived from a 64-bit master seed
// through mix64/derive_seed and the samplers below. std::mt19937_64 output is
// specified by the standard and the mappings to uniforms avoid the
// implementation-defined std::*_distribution classes, so identical seeds give
// identical streams on every platform.

// Fixed-point-free finalizer from splitmix64.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream seed for sub-experiment (a, b) of a master seed, e.g. (n, trial).
// Injective in (a, b) for a fixed master.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(mix64(master) ^ a) ^ b);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64{seed};
}

// Uniform double in [0, 1), 53 random bits.
template <typename Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exp(1) by inversion: -ln(U) with U uniform on (0,1]. The single atom U = 1
// (probability 2^-53) is redrawn so results are strictly positive.
template <typename Rng>
double exp1(Rng& rng) {
    for (;;) {
        const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
        const double w = -std::log(u);
        if (w > 0.0) return w;
    }
}

// Uniform integer in [0, bound) by multiply-shift with rejection (Lemire).
template <typename Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = rng();
    u128 m = static_cast<u128>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (lo < threshold) {
            x = rng();
            m = static_cast<u128>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

template <typename Rng>
bool bernoulli(Rng& rng, double p) {
    return uniform01(rng) < p;
}

}  // namespace fpp
