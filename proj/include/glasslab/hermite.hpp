#pragma once

#include <cstdint>
#include <vector>

namespace glasslab {

// Probabilists' Hermite polynomials: H_0 = 1, H_1 = x,
// H_{k+1} = x H_k - k H_{k-1}. E[H_j(eta) H_k(eta)] = delta_{jk} k! under the
// standard normal. The physicists' family differs by powers of sqrt(2) and
// would silently corrupt every variance constant downstream, so everything in
// this project uses the probabilists' convention.
inline double hermite(int k, double x) {
  if (k == 0) return 1.0;
  double hm = 1.0, h = x;
  for (int n = 1; n < k; ++n) {
    double hn = x * h - n * hm;
    hm = h;
    h = hn;
  }
  return h;
}

// Coefficients of H_k as int64 (exact for k <= 32); index = power of x.
inline std::vector<std::int64_t> hermite_coeffs_i64(int k) {
  std::vector<std::int64_t> prev{1};
  if (k == 0) return prev;
  std::vector<std::int64_t> cur{0, 1};
  for (int n = 1; n < k; ++n) {
    std::vector<std::int64_t> next(n + 2, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= std::int64_t(n) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Evaluation through the explicit coefficient expansion; used only to
// cross-check the three-term recurrence.
inline double hermite_via_coeffs(int k, double x) {
  auto c = hermite_coeffs_i64(k);
  double s = 0.0;
  for (int i = int(c.size()) - 1; i >= 0; --i) s = s * x + double(c[i]);
  return s;
}

}  // namespace glasslab
