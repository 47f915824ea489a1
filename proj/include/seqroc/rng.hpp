#pragma once

#include <cstdint>
#include <random>

namespace seqroc {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive decorrelated seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for substream `(master, a, b)`. Replicate `r` of an experiment uses
/// `substream_seed(master, r)`, so results never depend on thread scheduling.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                                       std::uint64_t b = 0) {
  return mix64(mix64(mix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(substream_seed(master, a, b));
}

}  // namespace seqroc
