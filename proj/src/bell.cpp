#include "glasslab/bell.hpp"

#include <cmath>
#include <stdexcept>

#include "glasslab/hermite.hpp"

namespace glasslab {

BigInt bell_complete(const std::vector<BigInt>& a) {
  const int n = int(a.size());
  std::vector<BigInt> B(n + 1);
  B[0] = 1;
  for (int m = 0; m < n; ++m) {
    BigInt s = 0;
    for (int i = 0; i <= m; ++i) s += binom_big(m, i) * B[m - i] * a[i];
    B[m + 1] = s;
  }
  return B[n];
}

BellCheckReport bell_asymptotic_check(int p, const std::vector<int>& spins) {
  if (p < 2 || p > 6) throw std::invalid_argument("bell check: p must be in 2..6");
  const int N = int(spins.size());
  if (N < p || N > 40) throw std::invalid_argument("bell check: N must be in p..40");

  // p! e_p via Newton's identities on the power sums; spins are +-1 so
  // s_k = S for odd k and N for even k, with S the plain sum.
  long long S = 0;
  for (int v : spins) {
    if (v != 1 && v != -1) throw std::invalid_argument("bell check: spins must be +-1");
    S += v;
  }
  std::vector<BigInt> e(p + 1);
  e[0] = 1;
  for (int m = 1; m <= p; ++m) {
    BigInt acc = 0;
    for (int k = 1; k <= m; ++k) {
      BigInt sk = (k % 2 == 1) ? BigInt(S) : BigInt(N);
      BigInt term = e[m - k] * sk;
      if (k % 2 == 0) term = -term;
      acc += term;
    }
    e[m] = acc / m;
  }
  BigInt lhs_int = factorial_big(p) * e[p];

  // Bell side: arguments a_j = -(j-1)! s_j, result times (-1)^p.
  std::vector<BigInt> args(p);
  for (int j = 1; j <= p; ++j) {
    BigInt sj = (j % 2 == 1) ? BigInt(S) : BigInt(N);
    args[j - 1] = -factorial_big(j - 1) * sj;
  }
  BigInt rhs_int = bell_complete(args);
  if (p % 2 == 1) rhs_int = -rhs_int;

  BellCheckReport r;
  r.p = p;
  r.N = N;
  double scale = std::pow(double(N), -p / 2.0);
  r.elementary_side = double(lhs_int) * scale;
  r.bell_side = double(rhs_int) * scale;
  r.residual = double(lhs_int - rhs_int) * scale;
  r.hermite_value = hermite(p, double(S) / std::sqrt(double(N)));
  r.hermite_gap = std::fabs(r.elementary_side - r.hermite_value);
  return r;
}

BellCheckReport bell_asymptotic_check(int p, int N, std::uint64_t seed) {
  std::vector<int> spins(N);
  std::uint64_t state = seed;
  for (int i = 0; i < N; ++i) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    spins[i] = (z & 1) ? 1 : -1;
  }
  return bell_asymptotic_check(p, spins);
}

}  // namespace glasslab
