#pragma once

#include <cstdint>
#include <random>

namespace lvlbal {

using Rng = std::mt19937_64;

// splitmix64 finalizer; a stable bijective mixer used for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for stream `index` of family `base`. Independent of how many other
// indices are drawn, so prefixes of a seed family never change.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform integer in [0, n). Lemire's multiply-shift with rejection; unlike
// std::uniform_int_distribution its output does not depend on the standard
// library in use.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  __uint128_t m = static_cast<__uint128_t>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<__uint128_t>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace lvlbal
