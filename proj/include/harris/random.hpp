#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace harris {

// Every stochastic operation takes one of these by reference. Reproducibility
// is per engine: the same seed yields the same stream.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; decorrelates nearby integers.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of the stream owned by path `index` of a run seeded with `master`.
// Depends only on (master, index), so paths can be generated in any order
// or on any number of threads.
constexpr std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t seed) {
    return Rng{seed};
}

// Uniform on the open interval (0,1) with 53 bits of resolution.
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Rng& rng) {
    return -std::log(uniform_open(rng));
}

} // namespace harris
