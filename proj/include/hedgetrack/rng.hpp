#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hedgetrack {

// Uniform double in [0,1) from one 64-bit draw. Used instead of
// std::uniform_real_distribution so that traces and selections are
// bit-identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller, consuming exactly two draws per call.
inline double gaussian(std::mt19937_64& rng) {
  double u = uniform01(rng);
  const double v = uniform01(rng);
  if (u <= 0.0) u = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(6.283185307179586476925286766559 * v);
}

}  // namespace hedgetrack
