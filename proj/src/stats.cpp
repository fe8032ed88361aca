#include "glasslab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace glasslab {

namespace {

struct PowerSums {
  double n = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  void remove(double x) {
    n -= 1;
    s1 -= x;
    s2 -= x * x;
    s3 -= x * x * x;
    s4 -= x * x * x * x;
  }
  void restore(double x) {
    n += 1;
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  // central moments from raw sums
  void central(double& mean, double& m2, double& m3, double& m4) const {
    mean = s1 / n;
    double a = mean;
    m2 = s2 / n - a * a;
    m3 = s3 / n - 3 * a * s2 / n + 2 * a * a * a;
    m4 = s4 / n - 4 * a * s3 / n + 6 * a * a * s2 / n - 3 * a * a * a * a;
  }
};

void base_stats(const PowerSums& ps, double& mean, double& var, double& skew,
                double& kurt) {
  double m2, m3, m4;
  ps.central(mean, m2, m3, m4);
  var = ps.n > 1 ? m2 * ps.n / (ps.n - 1) : 0.0;
  skew = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
  kurt = m2 > 0 ? m4 / (m2 * m2) - 3.0 : 0.0;
}

}  // namespace

MomentSummary summarize(const std::vector<double>& xs) {
  MomentSummary s;
  s.n = int(xs.size());
  if (xs.empty()) return s;
  PowerSums ps;
  for (double x : xs) ps.restore(x);
  double mean, var, skew, kurt;
  base_stats(ps, mean, var, skew, kurt);
  s.mean = mean;
  s.var = var;
  s.skewness = skew;
  s.ex_kurtosis = kurt;
  s.mean_sq0 = ps.s2 / ps.n;
  if (xs.size() < 3) return s;

  // delete-one jackknife on each statistic
  const double n = double(xs.size());
  double jm = 0, jv = 0, js = 0, jk = 0;
  std::vector<double> dm(xs.size()), dv(xs.size()), ds(xs.size()), dk(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ps.remove(xs[i]);
    double m_i, v_i, s_i, k_i;
    base_stats(ps, m_i, v_i, s_i, k_i);
    ps.restore(xs[i]);
    dm[i] = m_i;
    dv[i] = v_i;
    ds[i] = s_i;
    dk[i] = k_i;
    jm += m_i;
    jv += v_i;
    js += s_i;
    jk += k_i;
  }
  jm /= n;
  jv /= n;
  js /= n;
  jk /= n;
  double vm = 0, vv = 0, vs = 0, vk = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vm += (dm[i] - jm) * (dm[i] - jm);
    vv += (dv[i] - jv) * (dv[i] - jv);
    vs += (ds[i] - js) * (ds[i] - js);
    vk += (dk[i] - jk) * (dk[i] - jk);
  }
  double f = (n - 1.0) / n;
  s.se_mean = std::sqrt(f * vm);
  s.se_var = std::sqrt(f * vv);
  s.se_skewness = std::sqrt(f * vs);
  s.se_kurtosis = std::sqrt(f * vk);
  return s;
}

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need matching inputs, n >= 2");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  SlopeFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  if (x.size() > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - f.intercept - f.slope * x[i];
      ss += r * r;
    }
    f.se_slope = std::sqrt(ss / (n - 2) * n / denom);
  }
  return f;
}

}  // namespace glasslab
