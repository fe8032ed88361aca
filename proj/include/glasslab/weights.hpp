#pragma once

#include <map>
#include <vector>

#include "glasslab/clusters.hpp"
#include "glasslab/disorder.hpp"
#include "glasslab/mixture.hpp"

namespace glasslab {

// Normalized edge weights omega_e = N^{(p-1)/2} tanh(beta theta_p J_e /
// N^{(p-1)/2}) for every uniformity in the spec, with mask -> index lookup.
class WeightContext {
 public:
  WeightContext(const MixtureSpec& spec, double beta,
                const DisorderSample& sample);

  int N() const { return N_; }
  const MixtureSpec& spec() const { return *spec_; }
  const std::vector<double>& omega(int p) const;
  const EdgeSet& edges(int p) const;
  std::uint32_t index_of(int p, std::uint64_t mask) const;
  double omega_of(int p, std::uint64_t mask) const;
  // per-edge second moment m2(p) = N^{p-1} E tanh^2(...)
  double m2(int p) const;
  Disorder dist() const { return dist_; }
  double beta() const { return beta_; }

 private:
  const MixtureSpec* spec_;
  int N_;
  double beta_;
  Disorder dist_;
  std::map<int, std::vector<double>> omega_;
  std::map<int, double> m2_;
  std::map<int, std::map<std::uint64_t, std::uint32_t>> rank_;
};

// W_c over canonical structures (every even-degree vertex of degree exactly
// 2, odd-degree vertices of degree 1), by template-driven vertex-set
// iteration. Supported: (1,p;p), (2,p;2), (3,even;0), (3,odd;1), (4,p;0)
// and per-profile, mixed (1_pe,2_po;0) and (1_pe,1_po;1).
double cluster_weight_W(const WeightContext& ctx, const ClusterStructure& c);
double cluster_weight_W_profile(const WeightContext& ctx, int p,
                                const IntersectionProfile& d);

// V_c = hhat^l N^{-sum a_i (p_i-1)/2} W_c.
double cluster_V(const WeightContext& ctx, const ClusterStructure& c,
                 double h_hat);

// Independent route: filter all k-subsets (canonical-restricted), N small.
double cluster_weight_bruteforce(const WeightContext& ctx,
                                 const ClusterStructure& c,
                                 double budget = 1e8);

// Per-edge completion sums over the union of the spec's edge sets:
// T[i] = sum over partial structures Pi with Pi + {i} in S_c of omega(Pi),
// U[i] the same with omega(Pi)^2, count[i] = |S_c^{-i}|.
struct CompletionSums {
  std::vector<int> ps;            // uniformity per global edge slot
  std::vector<std::uint32_t> local;  // index within its uniformity
  std::vector<double> omega;      // omega_i
  std::vector<double> T, U;
  std::vector<double> count;
  std::size_t total_edges = 0;    // N_{p_e} + N_{p_o} (union size)
};
CompletionSums completion_sums(const WeightContext& ctx,
                               const ClusterStructure& c);
// Completions restricted to one (4,p) intersection profile.
CompletionSums completion_sums_profile(const WeightContext& ctx, int p,
                                       const IntersectionProfile& d);

// Exact combinatorial variance: |S_c| * prod m2(p_i)^{a_i}, canonical count.
double exact_weight_variance(const WeightContext& ctx,
                             const ClusterStructure& c);

}  // namespace glasslab
