#pragma once

#include <vector>

namespace glasslab {

// Moment summary with delete-one jackknife standard errors.
struct MomentSummary {
  int n = 0;
  double mean = 0.0;
  double var = 0.0;       // unbiased
  double skewness = 0.0;  // m3 / m2^{3/2}
  double ex_kurtosis = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
  double se_skewness = 0.0;
  double se_kurtosis = 0.0;
  // second moment about zero, for statistics whose limiting center is 0
  double mean_sq0 = 0.0;
};

MomentSummary summarize(const std::vector<double>& xs);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se_slope = 0.0;
};

// Least squares of y on x.
SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace glasslab
