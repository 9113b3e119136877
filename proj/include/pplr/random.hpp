#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pplr {

/// Every source of randomness in the library is one of these, seeded
/// explicitly, so whole runs replay bit-for-bit.
using Rng = std::mt19937_64;

/// SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index = 0) noexcept {
  return mix64(mix64(seed ^ mix64(stream)) + index);
}

/// Uniform double in [lo, hi). Implemented by hand rather than with
/// std::uniform_real_distribution so output does not depend on the standard
/// library vendor.
inline double uniform_real(Rng& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

/// Standard normal via Box-Muller; same portability reason as above.
inline double standard_normal(Rng& rng) {
  constexpr double kTwoPi = 6.283185307179586;
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform_real(rng, 0.0, 1.0);
  const double u2 = uniform_real(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace pplr
