#pragma once

// Seed handling shared by every randomized routine. A single user seed is
// split into independent per-task streams with SplitMix64, and bounded
// integers are drawn by rejection so results are identical on every
// standard library (std::uniform_int_distribution is not portable).

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

namespace pnfield::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the stream-th task derived from `seed`.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return splitMix64(splitMix64(seed) ^ splitMix64(stream + 0x632be59bd9b4e019ULL));
}

inline Engine engineFor(std::uint64_t seed, std::uint64_t stream) {
  return Engine(deriveSeed(seed, stream));
}

// Uniform integer in [0, bound); bound must be positive.
inline std::uint64_t uniformBelow(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

// `count` distinct values from [0, bound) in draw order.
inline std::vector<std::uint64_t> sampleDistinct(Engine& eng,
                                                 std::uint64_t bound,
                                                 std::uint64_t count) {
  std::vector<std::uint64_t> out;
  if (count > bound) count = bound;
  out.reserve(count);
  if (count * 2 > bound) {
    std::vector<std::uint64_t> all(bound);
    for (std::uint64_t i = 0; i < bound; ++i) all[i] = i;
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t j = i + uniformBelow(eng, bound - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < count) {
    std::uint64_t v = uniformBelow(eng, bound);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace pnfield::rng
