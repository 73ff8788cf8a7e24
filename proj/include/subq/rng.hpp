#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace subq {

using Rng = std::mt19937_64;

// splitmix64 finalizer; turns structured tags into well-mixed seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

// Derives an independent stream from a master seed and a tag path, e.g.
// derive_rng(seed, {kMutateTag, epoch, solution}).  Every consumer owns its
// own stream, so sequential and concurrent dispatch draw identical numbers.
inline Rng derive_rng(std::uint64_t seed,
                      std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t c : path) h = mix64(h ^ c);
  return Rng(h);
}

// Uniform integer in [0, bound), bound > 0.  Rejection keeps the draw
// unbiased without relying on the standard library's distribution objects,
// whose output is implementation-defined.
inline std::uint64_t rng_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~0ull - ~0ull % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

// Uniform double in [0, 1) with 53 random bits.
inline double rng_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool rng_coin(Rng& rng) { return (rng() & 1ull) != 0; }

}  // namespace subq
