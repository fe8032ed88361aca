#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "glasslab/common.hpp"

namespace glasslab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Dense polynomial in a single standard-normal variable, exact rational
// coefficients. Degree is capped so expectations stay within the exact
// arithmetic budget.
class RatPoly {
 public:
  static constexpr int kMaxDegree = 64;

  RatPoly() : c_(1, BigRat(0)) {}
  explicit RatPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.assign(1, BigRat(0));
    check_budget(degree());
  }
  static RatPoly constant(const BigRat& v) { return RatPoly({v}); }
  static RatPoly x() { return RatPoly({BigRat(0), BigRat(1)}); }

  int degree() const { return int(c_.size()) - 1; }
  const BigRat& coeff(int i) const { return c_[i]; }
  const std::vector<BigRat>& coeffs() const { return c_; }

  RatPoly operator+(const RatPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RatPoly(std::move(r));
  }
  RatPoly operator-(const RatPoly& o) const { return *this + o * BigRat(-1); }
  RatPoly operator*(const BigRat& s) const {
    std::vector<BigRat> r = c_;
    for (auto& v : r) v *= s;
    return RatPoly(std::move(r));
  }
  RatPoly operator*(const RatPoly& o) const {
    check_budget(degree() + o.degree());
    std::vector<BigRat> r(c_.size() + o.c_.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return RatPoly(std::move(r));
  }
  RatPoly pow(int n) const {
    RatPoly r = constant(BigRat(1));
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
  }

  double eval(double x) const {
    double s = 0.0;
    for (int i = degree(); i >= 0; --i) s = s * x + double(c_[i]);
    return s;
  }

 private:
  static void check_budget(int deg) {
    if (deg > kMaxDegree)
      throw BudgetError("RatPoly: degree exceeds exact-arithmetic budget", deg,
                        kMaxDegree);
  }
  std::vector<BigRat> c_;
};

// (2m-1)!! as a big integer.
inline BigInt double_factorial_odd(int m) {
  BigInt r = 1;
  for (int j = 2 * m - 1; j >= 3; j -= 2) r *= j;
  return r;
}

// E[p(eta)] for eta ~ N(0,1), exactly: odd powers vanish,
// E[eta^{2m}] = (2m-1)!!.
inline BigRat gaussian_moment_oracle(const RatPoly& p) {
  BigRat s = 0;
  for (int i = 0; i <= p.degree(); i += 2)
    s += p.coeff(i) * BigRat(double_factorial_odd(i / 2));
  return s;
}

// H_k with exact integer coefficients (probabilists' convention).
inline RatPoly hermite_rat(int k) {
  RatPoly hm = RatPoly::constant(BigRat(1));
  if (k == 0) return hm;
  RatPoly h = RatPoly::x();
  for (int n = 1; n < k; ++n) {
    RatPoly hn = RatPoly::x() * h - hm * BigRat(n);
    hm = h;
    h = hn;
  }
  return h;
}

inline BigInt factorial_big(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binom_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace glasslab
