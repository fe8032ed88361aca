#pragma once

#include <cmath>
#include <stdexcept>

namespace glasslab {

// Binary entropy rate I(x) = (1+x)/2 log(1+x) + (1-x)/2 log(1-x) on [-1,1],
// with the 0 log 0 = 0 convention at the endpoints.
inline double binary_entropy(double x) {
  if (!(x >= -1.0 && x <= 1.0))
    throw std::domain_error("binary_entropy: x outside [-1,1]");
  double ax = std::fabs(x);
  if (ax == 1.0) return std::log(2.0);
  // log1p keeps precision when x is near +-1 or near 0.
  return 0.5 * ((1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x));
}

// I'(x) = atanh(x).
inline double binary_entropy_d1(double x) {
  if (!(x > -1.0 && x < 1.0))
    throw std::domain_error("binary_entropy_d1: x outside (-1,1)");
  return std::atanh(x);
}

// Truncated even series I(x) = sum_{k>=1} x^{2k} / (2k(2k-1)); independent
// cross-check for the closed form.
inline double binary_entropy_series(double x, int terms) {
  double x2 = x * x;
  double pow = x2;
  double s = 0.0;
  for (int k = 1; k <= terms; ++k) {
    s += pow / (2.0 * k * (2.0 * k - 1.0));
    pow *= x2;
  }
  return s;
}

// phi(x) = x I'(x) / I(x), continuously extended by phi(0) = 2. Strictly
// increasing on [0,1) with range [2, inf).
inline double entropy_phi(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("entropy_phi: x outside [0,1)");
  if (x < 1e-8) {
    // I ~ x^2/2 + x^4/12, x I' ~ x^2 + x^4/3
    return 2.0 * (1.0 + x * x / 3.0) / (1.0 + x * x / 6.0);
  }
  return x * binary_entropy_d1(x) / binary_entropy(x);
}

}  // namespace glasslab
