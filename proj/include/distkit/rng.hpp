#pragma once

#include <cstdint>
#include <random>

namespace distkit {

/// Generator used for every stochastic draw in the library.
using Rng = std::mt19937_64;

/// SplitMix64 output function (Steele, Lea & Flood).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Key of child stream `index` under `parent`:
///
///     derive_seed(p, i) = mix(p ^ mix(i + 0x9E3779B97F4A7C15))
///
/// where mix is splitmix64_mix. Children of one parent are pairwise distinct
/// for distinct indices, and the derivation nests (a child key can itself be
/// a parent), which is how sweep cells and trajectories are keyed.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64_mix(parent ^ splitmix64_mix(index + 0x9E3779B97F4A7C15ULL));
}

/// Generator for child stream `index` of `parent`.
inline Rng substream(std::uint64_t parent, std::uint64_t index) {
  return Rng(derive_seed(parent, index));
}

}  // namespace distkit
