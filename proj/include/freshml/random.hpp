#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace freshml {

using Rng = std::mt19937_64;

/// One splitmix64 round; used to derive independent per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

/// Uniform integer in [lo, hi].
inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[uniform(rng, 0, xs.size() - 1)];
}

}  // namespace freshml
