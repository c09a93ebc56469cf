#pragma once

#include <cstdint>
#include <random>

#include "disctc/poly.hpp"

namespace disctc {

using Rng = std::mt19937_64;

/// Complex number with independent N(0, scale^2) real and imaginary parts.
inline Complex gaussian_complex(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Uniformly distributed point of the unit circle.
inline Complex unit_complex(Rng& rng) {
  std::uniform_real_distribution<double> u(-3.14159265358979323846, 3.14159265358979323846);
  return std::polar(1.0, u(rng));
}

}  // namespace disctc
