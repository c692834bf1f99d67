#pragma once

#include <cstdint>
#include <random>

namespace fcast {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for substream `stream` of a run seeded with `seed`:
/// mix64(seed XOR mix64(stream)). Each substream depends only on
/// (seed, stream), so adding streams never perturbs existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

}  // namespace fcast
