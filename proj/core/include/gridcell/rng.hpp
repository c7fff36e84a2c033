#pragma once

#include <cstdint>
#include <random>

namespace gridcell {

// splitmix64 step; good enough to whiten (seed, index) pairs into
// independent engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-work-unit seed derivation: realizations draw from independent streams
// so parallel or reordered execution reproduces the sequential aggregate.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index + 1));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t index = 0) {
    return Rng(derive_seed(seed, index));
}

} // namespace gridcell
