#pragma once

#include <cstdint>
#include <random>

namespace pdgraph {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for replicate r derived from the master seed. Replicates are
/// independent of each other and of the order in which they run.
inline std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t r) {
  return splitmix64(master_seed ^ splitmix64(r + 0x632be59bd9b4e019ULL));
}

inline Rng replicate_rng(std::uint64_t master_seed, std::uint64_t r) {
  return Rng{replicate_seed(master_seed, r)};
}

}  // namespace pdgraph
