#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace glasslab {

// Thrown when a requested computation exceeds its enumeration or arithmetic budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double requested, double limit)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", limit " + std::to_string(limit) + ")"),
        requested(requested),
        limit(limit) {}
  double requested;
  double limit;
};

// Compensated accumulator for long sums.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double binom_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

inline std::int64_t binom_i64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double lfactorial(int n) { return std::lgamma(n + 1.0); }

// |a - b| against a mixed absolute/relative scale.
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace glasslab
