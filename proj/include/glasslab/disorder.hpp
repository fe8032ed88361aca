#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glasslab/mixture.hpp"

namespace glasslab {

enum class Disorder { rademacher, gaussian, uniform_symmetric };
std::string disorder_name(Disorder d);
Disorder disorder_from_name(const std::string& s);

// Counter-based generator: every stream is a pure function of the key, so
// replicas are reproducible independently of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  static std::uint64_t derive(std::uint64_t master, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0);
  std::uint64_t next_u64();
  double next_u01();          // in (0,1]
  double next_normal();       // Box-Muller, explicit formulas
  double next_symmetric(Disorder d);  // unit variance, symmetric

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Complete p-uniform edge set over vertices 0..N-1, lexicographic order.
struct EdgeSet {
  int N = 0;
  int p = 0;
  std::vector<std::uint64_t> masks;
  std::vector<std::array<std::uint8_t, 8>> verts;  // first p entries used
};
const EdgeSet& edge_set(int N, int p);  // cached

// One disorder realization: i.i.d. unit-variance symmetric couplings indexed
// by the lexicographic edge order, one array per present uniformity.
struct DisorderSample {
  int N = 0;
  Disorder dist = Disorder::gaussian;
  std::uint64_t master_seed = 0;
  std::uint64_t replica = 0;
  std::map<int, std::vector<double>> J;

  const std::vector<double>& at(int p) const { return J.at(p); }
};

DisorderSample draw_disorder(const MixtureSpec& spec, int N, Disorder dist,
                             std::uint64_t master_seed, std::uint64_t replica);

// E[J^2-like] helpers for finite-N variance targets:
// m2(p) = N^{p-1} E tanh^2(beta theta_p J / N^{(p-1)/2}), exact for
// Rademacher, 64-point quadrature otherwise.
double edge_second_moment(int N, int p, double beta, double theta,
                          Disorder dist);
// E log cosh(beta theta J / N^{(p-1)/2}) and its variance under J.
double logcosh_mean(int N, int p, double beta, double theta, Disorder dist);
double logcosh_var(int N, int p, double beta, double theta, Disorder dist);
double moment4(Disorder dist);  // E J^4

}  // namespace glasslab
