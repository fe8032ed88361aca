#pragma once

#include <map>
#include <string>
#include <vector>

#include "glasslab/clusters.hpp"
#include "glasslab/disorder.hpp"
#include "glasslab/field.hpp"
#include "glasslab/mixture.hpp"
#include "glasslab/stats.hpp"

namespace glasslab {

int resolve_threads(int requested);  // GLASSLAB_THREADS caps when set

struct EnsembleConfig {
  MixtureSpec spec = MixtureSpec::pure(3);
  double beta_frac = 0.5;  // beta = beta_frac * beta_c(spec); keeps runs below beta_c
  ExternalField field;     // alpha = inf by default
  std::vector<int> N_list;
  int replicas = 1000;
  std::vector<ClusterStructure> structures;
  Disorder dist = Disorder::gaussian;
  std::uint64_t seed = 42;
  int threads = 0;
  // Gray-scan exactness cutoff; beyond it the truncated-cluster proxy is used.
  int max_exact_n = 22;
};

struct CellData {
  int N = 0;
  double beta = 0.0;
  double h = 0.0;
  bool exact_route = true;
  std::vector<double> log_zhat;
  std::vector<double> log_zbar;
  std::map<std::string, std::vector<double>> W;
  std::string error;  // budget failures keep partial results
};

struct EnsembleResult {
  double beta_c = 0.0;
  double beta = 0.0;
  std::vector<CellData> cells;
};

EnsembleResult run_ensemble(const EnsembleConfig& cfg);

// Monte Carlo check of log Zbar against its analytic mean and variance.
struct ZbarStats {
  int N = 0;
  int replicas = 0;
  double beta = 0.0;
  MomentSummary empirical;
  double mean_target = 0.0;       // sum_p C(N,p) E log cosh(...)
  double var_target_leading = 0.0;  // beta^4 theta^4 C(N,p_m) Var(J^2) / 4 N^{2pm-2}
  double var_target_exact = 0.0;    // sum_p C(N,p) Var(log cosh(...))
  double var_j2 = 0.0;
};
ZbarStats zbar_stats(const MixtureSpec& spec, double beta, int N, int replicas,
                     std::uint64_t seed, Disorder dist, int threads = 0);

// Which side dominates Var(log Z - centering): the i.i.d. edge product
// (slope ~ -(p_m-2)) or the single-hyperedge cluster (slope ~ -(2 alpha p_m - 1)).
struct FreeEnergyRegimeReport {
  double alpha = 0.0;
  double threshold = 0.0;  // (p_m - 1) / (2 p_m)
  std::vector<int> Ns;
  std::vector<double> var_logz;
  SlopeFit fit;
  double slope_zbar = 0.0;
  double slope_cluster = 0.0;
  std::string winner;    // "zbar", "cluster", or "threshold"
  std::string expected;  // classification by alpha vs threshold
  bool matches = false;
};
FreeEnergyRegimeReport freeenergy_regime_check(const MixtureSpec& spec,
                                               double alpha, double beta_frac,
                                               const std::vector<int>& N_list,
                                               int replicas, std::uint64_t seed,
                                               Disorder dist, int threads = 0,
                                               double rho = 1.0);

}  // namespace glasslab
