#pragma once

#include <vector>

namespace glasslab {

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Hermite rule for the standard normal weight: E[f(eta)] ~ sum w_i
// f(x_i), exact for polynomials of degree <= 2n-1. Golub-Welsch on the
// probabilists' Jacobi matrix (zero diagonal, off-diagonal sqrt(k)).
QuadratureRule gauss_hermite_prob(int n);

// Gauss-Legendre on [a,b], exact for degree <= 2n-1.
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace glasslab
