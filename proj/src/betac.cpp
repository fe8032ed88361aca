#include "glasslab/betac.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "glasslab/common.hpp"
#include "glasslab/entropy.hpp"

namespace glasslab {

std::string BetaCResult::x_star_label() const {
  if (boundary_zero) return "boundary-zero";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x_star);
  return buf;
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol, double* fmin) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b);
  if (fmin) *fmin = f(xm);
  return xm;
}

namespace {

// log(I(x)/xi(x)); working in logs keeps huge p! factors representable.
double log_ratio(const MixtureSpec& spec, double x) {
  return std::log(binary_entropy(x)) - std::log(spec.xi(x));
}

}  // namespace

BetaCResult beta_c(const MixtureSpec& spec, double tol, int grid_points) {
  const double lo = 1e-9, hi = 1.0 - 1e-9;
  grid_points = std::max(grid_points, 2048);
  int best = -1;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> xs(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    double x = lo + (hi - lo) * i / double(grid_points - 1);
    xs[i] = x;
    double v = log_ratio(spec, x);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  BetaCResult r;
  r.method = BetaCResult::Method::grid_golden;

  if (best == 0) {
    // Ratio decreases toward x -> 0+. The limit is I/xi -> (1/2)/(theta_2^2/2)
    // when a p = 2 term is present; otherwise the ratio blows up and the
    // minimum is interior after all, so fall through to refinement.
    double th2 = spec.theta_at(2);
    if (th2 > 0.0) {
      double limit = 1.0 / (th2 * th2);
      if (std::log(limit) <= best_val + 1e-15) {
        r.beta_c = std::sqrt(limit);
        r.boundary_zero = true;
        r.tolerance_achieved = std::exp(best_val / 2.0) - r.beta_c;
        return r;
      }
    }
  }

  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(grid_points - 1, best + 1)];
  double fmin = 0.0;
  double xstar =
      golden_min([&](double x) { return log_ratio(spec, x); }, a, b,
                 std::max(tol * tol, 1e-14), &fmin);
  r.beta_c = std::exp(0.5 * fmin);
  r.x_star = xstar;
  r.tolerance_achieved = tol;
  return r;
}

BetaCResult phi_inverse_beta_c(int p, double xtol) {
  if (p < 3) throw std::invalid_argument("phi_inverse_beta_c: p must be >= 3");
  // phi is strictly increasing from 2; bracket then bisect.
  double lo = 0.0, hi = 1.0 - 1e-16;
  for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (entropy_phi(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  BetaCResult r;
  r.method = BetaCResult::Method::phi_inverse;
  r.x_star = x;
  r.tolerance_achieved = std::fabs(entropy_phi(x) - p);
  double log_b2 = std::log(binary_entropy(x)) - p * std::log(x) + lfactorial(p);
  r.beta_c = std::exp(0.5 * log_b2);
  return r;
}

double talagrand_lower_bound(int p) {
  if (p < 3) throw std::invalid_argument("talagrand_lower_bound: p must be >= 3");
  auto f = [&](double x) {
    return (1.0 + std::pow(x, -double(p))) * binary_entropy(x);
  };
  // Closed interval: x = 1 is admissible (value 2 log 2) and is the minimizer
  // for large p.
  const int n = 4096;
  double best_x = 1.0, best_v = 2.0 * std::log(2.0);
  for (int i = 1; i < n; ++i) {
    double x = i / double(n);
    double v = f(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  if (best_x < 1.0) {
    double a = std::max(1.0 / n, best_x - 1.0 / n);
    double b = std::min(1.0, best_x + 1.0 / n);
    golden_min(f, a, b, 1e-12, &best_v);
  }
  return std::sqrt(best_v);
}

}  // namespace glasslab
