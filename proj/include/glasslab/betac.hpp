#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "glasslab/mixture.hpp"

namespace glasslab {

struct BetaCResult {
  double beta_c = 0.0;
  // Minimizer in (0,1]; meaningless when boundary_zero is set, in which case
  // the infimum is attained only in the x -> 0+ limit.
  double x_star = 0.0;
  bool boundary_zero = false;
  enum class Method { grid_golden, phi_inverse, multi_species } method =
      Method::grid_golden;
  double tolerance_achieved = 0.0;
  std::vector<double> x_vec;  // multi-species argmin

  std::string x_star_label() const;
};

// Golden-section minimum of f on [a,b] to x-tolerance tol.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol, double* fmin = nullptr);

// beta_c = min over x in (0,1) of sqrt(I(x)/xi(x)). Grid scan plus golden
// refinement; a left-boundary minimum is resolved through the analytic
// x -> 0 limit of I/xi (finite only when theta_2 > 0).
BetaCResult beta_c(const MixtureSpec& spec, double tol = 1e-6,
                   int grid_points = 4096);

// Pure-p shortcut: solve phi(x) = x I'(x)/I(x) = p by bisection, then
// beta_c = sqrt(I(x*) / xi_p(x*)) with xi_p = x^p/p!.
BetaCResult phi_inverse_beta_c(int p, double xtol = 1e-12);

// min over x in [0,1] of sqrt((1 + x^-p) I(x)).
double talagrand_lower_bound(int p);

}  // namespace glasslab
