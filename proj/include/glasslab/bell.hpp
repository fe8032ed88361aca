#pragma once

#include <vector>

#include "glasslab/moment_oracle.hpp"

namespace glasslab {

// Complete exponential Bell polynomial B_n(a_1..a_n) by the recurrence
// B_{n+1} = sum_{i=0}^{n} C(n,i) B_{n-i} a_{i+1}, B_0 = 1.
BigInt bell_complete(const std::vector<BigInt>& a);

struct BellCheckReport {
  int p = 0;
  int N = 0;
  // p! e_p(x) N^{-p/2} computed from the elementary symmetric sum, and the
  // same quantity through the Bell-polynomial identity in the power sums.
  double elementary_side = 0.0;
  double bell_side = 0.0;
  double residual = 0.0;  // exact-integer difference, scaled
  // H_p of the normalized spin sum, and its gap to the scaled sum.
  double hermite_value = 0.0;
  double hermite_gap = 0.0;
};

// Checks the identity on a vector of +-1 spins. Preconditions: 2 <= p <= 6,
// N <= 40.
BellCheckReport bell_asymptotic_check(int p, const std::vector<int>& spins);
// Convenience: random +-1 spins from a deterministic seed.
BellCheckReport bell_asymptotic_check(int p, int N, std::uint64_t seed);

}  // namespace glasslab
