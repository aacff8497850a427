#pragma once

#include <cstdint>
#include <random>

namespace netgames {

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions are not, so draws go through the
// helpers below to keep results identical across toolchains.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for sub-stream `index` of `base`: mix64(base + (index + 1) * 0x9E3779B97F4A7C15).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

__extension__ using uint128_t = unsigned __int128;

/// Unbiased integer in [0, n) (Lemire's multiply-and-reject). n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  uint128_t m = static_cast<uint128_t>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<uint128_t>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Real in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Real in [lo, hi).
inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace netgames
