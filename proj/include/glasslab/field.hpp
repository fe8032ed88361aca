#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace glasslab {

// Vanishing external field h = rho * N^{-alpha}. alpha = +inf encodes h = 0;
// alpha < 1/4 is outside the supported regime and rejected.
struct ExternalField {
  double rho = 1.0;
  double alpha = std::numeric_limits<double>::infinity();

  ExternalField() = default;
  ExternalField(double rho_, double alpha_) : rho(rho_), alpha(alpha_) {
    if (!(rho > 0.0)) throw std::invalid_argument("ExternalField: rho must be > 0");
    if (!(alpha >= 0.25)) throw std::invalid_argument("ExternalField: alpha must be >= 1/4");
  }
  static ExternalField zero() { return ExternalField(); }

  bool is_zero() const { return std::isinf(alpha); }
  double h(int N) const {
    return is_zero() ? 0.0 : rho * std::pow(double(N), -alpha);
  }
  double h_hat(int N) const { return std::tanh(h(N)); }
  double h_tilde2(int N) const {
    double t = std::tanh(h(N));
    return std::atanh(t * t);
  }
};

}  // namespace glasslab
