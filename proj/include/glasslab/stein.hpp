#pragma once

#include <string>
#include <vector>

#include "glasslab/clusters.hpp"
#include "glasslab/disorder.hpp"
#include "glasslab/mixture.hpp"
#include "glasslab/stats.hpp"
#include "glasslab/weights.hpp"

namespace glasslab {

// Glauber exchangeable pair: resample the weight of one hyperedge chosen
// uniformly from the union of the model's edge sets.
struct ExchangeablePairConfig {
  MixtureSpec spec = MixtureSpec::pure(3);
  double beta = 1.0;  // absolute inverse temperature
  std::vector<ClusterStructure> structures;
  Disorder dist = Disorder::gaussian;
};

// lambda_c = (total edges of c) / (union edge count of the model).
double pair_lambda(const ExchangeablePairConfig& cfg, int N,
                   const ClusterStructure& c);

struct LinearityResult {
  std::string structure;
  double lambda = 0.0;
  double W = 0.0;
  double lhs = 0.0;       // E(Delta W | disorder), computed analytically
  double residual = 0.0;  // |lhs + lambda W|
  bool pass = false;      // residual <= 1e-10 (1 + |W|)
};

// E(Delta W | disorder) = -(1/N_pool) sum_i omega_i T_i with T_i from an
// independent completion enumeration; must equal -lambda W exactly.
std::vector<LinearityResult> linearity_check(const ExchangeablePairConfig& cfg,
                                             const DisorderSample& sample);
// Same identity per (4,p) intersection profile.
std::vector<LinearityResult> linearity_check_profiles(
    const ExchangeablePairConfig& cfg, int p, const DisorderSample& sample);

// Conditional second-moment pieces for one sample (pure structures only).
struct AbcdValues {
  double A = 0, B = 0, C = 0, D = 0;
  double identity_residual = 0;  // decomposition check, relative
  double nu2 = 0;                // exact Var(W_c)
};
AbcdValues abcd_values(const WeightContext& ctx, const ClusterStructure& c);

struct ScalingDiagnostic {
  std::vector<int> Ns;
  std::vector<double> normalized;  // e.g. E[A^2]/nu^4 per N
  SlopeFit fit;
  double reference_exponent = 0.0;
  double slack = 0.0;
  bool within_slack = false;  // warn-level, not a hard gate
};

struct AbcdDiagnostic {
  ScalingDiagnostic a, b, c, d;
  double worst_identity_residual = 0.0;
};
AbcdDiagnostic conditional_variance_diagnostic(
    const ExchangeablePairConfig& cfg, const ClusterStructure& c,
    const std::vector<int>& N_list, int replicas, std::uint64_t seed,
    int threads = 0);

// N_pool E|Delta W|^3 / nu^3 against N^{-p/2}; the omega' average is done by
// quadrature, replicas only average the disorder.
ScalingDiagnostic third_moment_diagnostic(const ExchangeablePairConfig& cfg,
                                          const ClusterStructure& c,
                                          const std::vector<int>& N_list,
                                          int replicas, std::uint64_t seed,
                                          int threads = 0);

}  // namespace glasslab
