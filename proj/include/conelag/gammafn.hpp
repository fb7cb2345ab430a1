#pragma once

// Gamma function for complex argument (Lanczos, g = 7) plus pole detection.
// Real arguments go through std::tgamma / std::lgamma.

#include <cmath>

#include "conelag/core.hpp"

namespace conelag {

/// Distance from z to the nearest pole of Gamma (nonpositive integers);
/// infinity-flavored when Re z > 0.5.
inline double gamma_pole_distance(Complex z) {
  if (z.real() > 0.5) return 1.0;
  double nearest = std::round(z.real());
  if (nearest > 0.0) return 1.0;
  return std::hypot(z.real() - nearest, z.imag());
}

/// Gamma(z) for complex z, accurate to roughly 1e-13 relative away from the
/// poles.
inline Complex cgamma(Complex z) {
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (gamma_pole_distance(z) < 1e-12)
    throw GammaPole("Gamma evaluated at a nonpositive integer");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    const double pi = 3.14159265358979323846;
    return pi / (std::sin(pi * z) * cgamma(1.0 - z));
  }
  z -= 1.0;
  Complex x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + double(i));
  Complex t = z + g + 0.5;
  const double sqrt2pi = 2.5066282746310005;
  return sqrt2pi * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline double rgamma(double x) {
  if (gamma_pole_distance(Complex(x, 0.0)) < 1e-12)
    throw GammaPole("Gamma evaluated at a nonpositive integer");
  return std::tgamma(x);
}

}  // namespace conelag
