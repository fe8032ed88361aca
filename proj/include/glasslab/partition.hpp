#pragma once

#include "glasslab/disorder.hpp"
#include "glasslab/mixture.hpp"

namespace glasslab {

struct PartitionBreakdown {
  double log_z = 0.0;
  double log_zbar = 0.0;
  double log_zhat = 0.0;  // direct tilted-expectation route
  double h = 0.0;
  // |log Z - N log(2 cosh h) - log Zbar - log Zhat| / (1 + |log Z|); the two
  // independent routes to Zhat must agree through this identity.
  double residual = 0.0;
};

// Full 2^N evaluation. Preconditions: N <= 22 and sum_p C(N,p) <= 1e5.
PartitionBreakdown exact_partition(const MixtureSpec& spec, double beta,
                                   double h, const DisorderSample& sample);

// log Zbar = sum over edges of log cosh(beta theta_p J / N^{(p-1)/2}).
double log_zbar(const MixtureSpec& spec, double beta,
                const DisorderSample& sample);

// Zhat = E_h prod_edges (1 + sigma_edge tanh(...)), evaluated exactly by a
// Gray-code scan of all 2^N spin configurations.
double log_zhat_exact(const MixtureSpec& spec, double beta, double h,
                      const DisorderSample& sample);

// log Z by direct log-sum-exp over configurations.
double log_z_direct(const MixtureSpec& spec, double beta, double h,
                    const DisorderSample& sample);

// Truncated cluster sum: sum over sub-hypergraphs with at most max_edges
// edges, uniformities <= max_p, of hhat^{|odd boundary|} * prod tanh-weights.
double truncated_zhat(const MixtureSpec& spec, double beta, double h,
                      const DisorderSample& sample, int max_edges, int max_p);

// Cost model for the Gray-code scan (flip updates); callers use it to pick
// the exact route vs the cluster proxy.
double zhat_exact_cost(const MixtureSpec& spec, int N);

}  // namespace glasslab
