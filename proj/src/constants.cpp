#include "glasslab/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "glasslab/common.hpp"
#include "glasslab/hermite.hpp"
#include "glasslab/quadrature.hpp"

namespace glasslab {

double LimitConstant::disagreement() const {
  double e = double(exact);
  return std::fabs(e - quadrature) / std::max(1.0, std::fabs(e));
}

namespace {

constexpr int kDegreeBudget = 40;

// p!^{-k/2} E[H_k(H_p(eta)/sqrt(p!)) H_l(eta)], exactly. In the expansion
// H_k(y) = sum_j c_{k,j} y^j only j = k (mod 2) survives, so the combined
// power p!^{-(k+j)/2} is integral and every term is rational.
BigRat pure_expectation(int k, int l, int p) {
  auto ck = hermite_coeffs_i64(k);
  RatPoly hp = hermite_rat(p);
  RatPoly hl = hermite_rat(l);
  BigInt pfact = factorial_big(p);
  BigRat total = 0;
  RatPoly hp_pow = RatPoly::constant(BigRat(1));
  for (int j = 0; j <= k; ++j) {
    if (j > 0) hp_pow = hp_pow * hp;
    if (ck[j] == 0) continue;
    BigRat mom = gaussian_moment_oracle(hp_pow * hl);
    BigInt pf_pow = 1;
    for (int t = 0; t < (k + j) / 2; ++t) pf_pow *= pfact;
    total += BigRat(ck[j]) * mom / BigRat(pf_pow);
  }
  return total;
}

// E[H_ae(H_pe/sqrt(pe!)) H_ao(H_po/sqrt(po!)) H_b] * pe!^{-ae/2} po!^{-ao/2},
// exact by the same parity argument applied to both uniformities.
BigRat mixed_expectation(int a_e, int p_e, int a_o, int p_o, int b) {
  auto ce = hermite_coeffs_i64(a_e);
  auto co = hermite_coeffs_i64(a_o);
  RatPoly hpe = hermite_rat(p_e);
  RatPoly hpo = hermite_rat(p_o);
  RatPoly hb = hermite_rat(b);
  BigInt pef = factorial_big(p_e), pof = factorial_big(p_o);
  BigRat total = 0;
  RatPoly hpe_pow = RatPoly::constant(BigRat(1));
  for (int j = 0; j <= a_e; ++j) {
    if (j > 0) hpe_pow = hpe_pow * hpe;
    if (ce[j] == 0) continue;
    RatPoly hpo_pow = RatPoly::constant(BigRat(1));
    for (int m = 0; m <= a_o; ++m) {
      if (m > 0) hpo_pow = hpo_pow * hpo;
      if (co[m] == 0) continue;
      RatPoly term = hpe_pow * hpo_pow * hb;
      BigRat mom = gaussian_moment_oracle(term);
      BigInt pe_pow = 1, po_pow = 1;
      for (int t = 0; t < (a_e + j) / 2; ++t) pe_pow *= pef;
      for (int t = 0; t < (a_o + m) / 2; ++t) po_pow *= pof;
      total += BigRat(ce[j]) * BigRat(co[m]) * mom / (BigRat(pe_pow) * BigRat(po_pow));
    }
  }
  return total;
}

double quad_expect_pure(int k, int l, int p) {
  int deg = k * p + l;
  QuadratureRule q = gauss_hermite_prob(deg / 2 + 1);
  double sqp = std::sqrt(std::tgamma(p + 1.0));
  long double s = 0.0L;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    long double f = hermite(k, hermite(p, q.x[i]) / sqp) * hermite(l, q.x[i]);
    s += (long double)q.w[i] * f;
  }
  return double(s);
}

double quad_expect_mixed(int a_e, int p_e, int a_o, int p_o, int b) {
  int deg = a_e * p_e + a_o * p_o + b;
  QuadratureRule q = gauss_hermite_prob(deg / 2 + 1);
  double se = std::sqrt(std::tgamma(p_e + 1.0));
  double so = std::sqrt(std::tgamma(p_o + 1.0));
  long double s = 0.0L;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    long double f = hermite(a_e, hermite(p_e, q.x[i]) / se) *
                    hermite(a_o, hermite(p_o, q.x[i]) / so) *
                    hermite(b, q.x[i]);
    s += (long double)q.w[i] * f;
  }
  return double(s);
}

void check_degree(int deg) {
  if (deg > kDegreeBudget)
    throw BudgetError("limit constant polynomial degree over budget", deg,
                      kDegreeBudget);
}

}  // namespace

LimitConstant u_squared(int k, int l, int p) {
  check_degree(k * p + l);
  BigRat norm = BigRat(1) / (BigRat(factorial_big(k)) * BigRat(factorial_big(l)));
  LimitConstant r;
  r.exact = norm * pure_expectation(k, l, p);
  double sqp = std::pow(std::tgamma(p + 1.0), k / 2.0);
  r.quadrature = quad_expect_pure(k, l, p) /
                 (std::tgamma(k + 1.0) * std::tgamma(l + 1.0) * sqp);
  return r;
}

LimitConstant u_squared_mixed(int a_e, int p_e, int a_o, int p_o, int b) {
  check_degree(a_e * p_e + a_o * p_o + b);
  BigRat norm = BigRat(1) / (BigRat(factorial_big(a_e)) *
                             BigRat(factorial_big(a_o)) *
                             BigRat(factorial_big(b)));
  LimitConstant r;
  r.exact = norm * mixed_expectation(a_e, p_e, a_o, p_o, b);
  double spe = std::pow(std::tgamma(p_e + 1.0), a_e / 2.0);
  double spo = std::pow(std::tgamma(p_o + 1.0), a_o / 2.0);
  r.quadrature = quad_expect_mixed(a_e, p_e, a_o, p_o, b) /
                 (std::tgamma(a_e + 1.0) * std::tgamma(a_o + 1.0) *
                  std::tgamma(b + 1.0) * spe * spo);
  return r;
}

namespace {

BigRat rat_from_double_pow(double base, int exp2) {
  // beta and rho enter as plain doubles; the exact path keeps them exact via
  // the binary representation.
  BigRat b(base);
  BigRat r = 1;
  for (int i = 0; i < exp2; ++i) r *= b;
  return r;
}

}  // namespace

LimitConstant v_squared(int k, int l, int p, double beta, double rho) {
  LimitConstant u = u_squared(k, l, p);
  LimitConstant r;
  r.exact = u.exact * rat_from_double_pow(beta, 2 * k) *
            (l == 0 ? BigRat(1) : rat_from_double_pow(rho, 2 * l));
  r.quadrature = u.quadrature * std::pow(beta, 2 * k) *
                 (l == 0 ? 1.0 : std::pow(rho, 2 * l));
  return r;
}

LimitConstant v_squared_mixed(int a_e, int p_e, int a_o, int p_o, int b,
                              double beta, double rho, double theta_e,
                              double theta_o) {
  LimitConstant u = u_squared_mixed(a_e, p_e, a_o, p_o, b);
  LimitConstant r;
  r.exact = u.exact * rat_from_double_pow(beta, 2 * (a_e + a_o)) *
            rat_from_double_pow(theta_e, 2 * a_e) *
            rat_from_double_pow(theta_o, 2 * a_o) *
            (b == 0 ? BigRat(1) : rat_from_double_pow(rho, 2 * b));
  r.quadrature = u.quadrature * std::pow(beta, 2 * (a_e + a_o)) *
                 std::pow(theta_e, 2 * a_e) * std::pow(theta_o, 2 * a_o) *
                 (b == 0 ? 1.0 : std::pow(rho, 2 * b));
  return r;
}

LimitConstant u_squared_for(const ClusterStructure& c) {
  if (c.edges.size() == 1)
    return u_squared(c.edges[0].first, c.odd_vertices, c.edges[0].second);
  if (c.edges.size() == 2) {
    // even uniformity slot first in the mixed formula
    auto [a1, p1] = c.edges[0];
    auto [a2, p2] = c.edges[1];
    if (p1 % 2 == 0) return u_squared_mixed(a1, p1, a2, p2, c.odd_vertices);
    return u_squared_mixed(a2, p2, a1, p1, c.odd_vertices);
  }
  throw std::invalid_argument("u_squared_for: more than two uniformities");
}

LimitConstant v_squared_for(const ClusterStructure& c, double beta, double rho,
                            double theta_first, double theta_second) {
  if (c.edges.size() == 1) {
    LimitConstant v =
        v_squared(c.edges[0].first, c.odd_vertices, c.edges[0].second, beta, rho);
    LimitConstant r;
    r.exact = v.exact * rat_from_double_pow(theta_first, 2 * c.edges[0].first);
    r.quadrature =
        v.quadrature * std::pow(theta_first, 2 * c.edges[0].first);
    return r;
  }
  if (c.edges.size() == 2) {
    auto [a1, p1] = c.edges[0];
    auto [a2, p2] = c.edges[1];
    if (p1 % 2 == 0)
      return v_squared_mixed(a1, p1, a2, p2, c.odd_vertices, beta, rho,
                             theta_first, theta_second);
    return v_squared_mixed(a2, p2, a1, p1, c.odd_vertices, beta, rho,
                           theta_second, theta_first);
  }
  throw std::invalid_argument("v_squared_for: more than two uniformities");
}

}  // namespace glasslab
