#pragma once

// Seeded sampling that is identical across standard libraries: only the
// mt19937_64 bit stream is used, never std::*_distribution.

#include <cmath>
#include <cstdint>
#include <random>

#include "qpainleve/scalar.hpp"

namespace qpainleve {

/// Uniform in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

/// Complex number with modulus in [rmin, rmax) and uniform phase.
inline Complex<double> random_polar(std::mt19937_64& rng, double rmin, double rmax) {
  double r = uniform(rng, rmin, rmax);
  double phase = uniform(rng, -M_PI, M_PI);
  return {r * std::cos(phase), r * std::sin(phase)};
}

}  // namespace qpainleve
