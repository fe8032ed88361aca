#pragma once

#include <map>
#include <string>
#include <vector>

#include "glasslab/betac.hpp"

namespace glasslab {

// Multi-species mixture: species ratios lambda_s summing to 1 and, per
// uniformity p, a symmetric nonnegative p-tensor Delta_p^2 over species.
// xi(x) = sum_p (1/p!) <Lambda^(x)p Delta_p^2, x^(x)p>.
class MultiSpeciesSpec {
 public:
  MultiSpeciesSpec(std::vector<double> lambda,
                   std::map<int, std::vector<double>> delta2_flat);

  // {"lambda": [...], "delta2": {"2": [[..],[..]], "3": [[[..]..]..]}}
  static MultiSpeciesSpec from_json_text(const std::string& text);

  int species() const { return k_; }
  const std::vector<double>& lambda() const { return lambda_; }

  double xi(const std::vector<double>& x) const;

 private:
  int k_;
  std::vector<double> lambda_;
  // Collapsed symmetric terms: coefficient * prod_j x[s_j] over sorted
  // multi-indices, one list per uniformity.
  struct Term {
    std::vector<int> idx;
    double coef;
  };
  std::vector<Term> terms_;
};

// inf over (0,1]^k of sqrt(sum_s lambda_s I(x_s) / xi(x)) by multi-start
// coordinate descent, each 1-D step solved by golden section. Deterministic
// for fixed seed.
BetaCResult beta_c_multispecies(const MultiSpeciesSpec& ms, double tol = 1e-6,
                                int starts = 32, std::uint64_t seed = 12345);

}  // namespace glasslab
