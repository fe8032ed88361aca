#include "glasslab/partition.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <mutex>

#include "glasslab/common.hpp"

namespace glasslab {

namespace {

// Edges incident to each vertex, with the other p-1 vertices unpacked.
struct FlipTable {
  int N = 0, p = 0;
  // per vertex: contiguous entries (edge index, other vertices)
  struct Entry {
    std::uint32_t edge;
    std::uint8_t others[7];
  };
  std::vector<std::vector<Entry>> per_vertex;
};

const FlipTable& flip_table(int N, int p) {
  static std::map<std::pair<int, int>, FlipTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(N, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const EdgeSet& es = edge_set(N, p);
  FlipTable ft;
  ft.N = N;
  ft.p = p;
  ft.per_vertex.resize(N);
  for (std::uint32_t e = 0; e < es.masks.size(); ++e) {
    for (int i = 0; i < p; ++i) {
      int v = es.verts[e][i];
      FlipTable::Entry en{};
      en.edge = e;
      int n = 0;
      for (int j = 0; j < p; ++j)
        if (j != i) en.others[n++] = es.verts[e][j];
      ft.per_vertex[v].push_back(en);
    }
  }
  return cache.emplace(key, std::move(ft)).first->second;
}

void check_partition_budget(const MixtureSpec& spec, int N) {
  if (N > 22)
    throw BudgetError("exact partition: N over budget", N, 22);
  double edges = 0;
  for (const auto& [p, th] : spec.theta()) edges += binom_d(N, p);
  if (edges > 1e5)
    throw BudgetError("exact partition: edge count over budget", edges, 1e5);
}

struct UniformityData {
  int p;
  const FlipTable* ft;
  std::vector<double> t;      // tanh weights per edge
  std::vector<double> ratio;  // [2e] = (1-t)/(1+t), [2e+1] = inverse
  std::vector<double> coupling;  // beta theta J / N^{(p-1)/2}
};

std::vector<UniformityData> build_uniformities(const MixtureSpec& spec,
                                               double beta,
                                               const DisorderSample& sample) {
  std::vector<UniformityData> out;
  const int N = sample.N;
  for (const auto& [p, th] : spec.theta()) {
    UniformityData u;
    u.p = p;
    u.ft = &flip_table(N, p);
    const auto& J = sample.at(p);
    double scale = beta * th * std::pow(double(N), -(p - 1) / 2.0);
    u.t.resize(J.size());
    u.ratio.resize(2 * J.size());
    u.coupling.resize(J.size());
    for (std::size_t e = 0; e < J.size(); ++e) {
      double c = scale * J[e];
      double t = std::tanh(c);
      u.t[e] = t;
      u.ratio[2 * e] = (1.0 - t) / (1.0 + t);
      u.ratio[2 * e + 1] = (1.0 + t) / (1.0 - t);
      u.coupling[e] = c;
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

double log_zbar(const MixtureSpec& spec, double beta,
                const DisorderSample& sample) {
  const int N = sample.N;
  KahanSum s;
  for (const auto& [p, th] : spec.theta()) {
    double scale = beta * th * std::pow(double(N), -(p - 1) / 2.0);
    for (double j : sample.at(p)) s.add(std::log(std::cosh(scale * j)));
  }
  return s.value();
}

double zhat_exact_cost(const MixtureSpec& spec, int N) {
  double per_flip = 0;
  for (const auto& [p, th] : spec.theta()) per_flip += binom_d(N - 1, p - 1);
  return std::ldexp(per_flip, N);  // 2^N flips
}

double log_zhat_exact(const MixtureSpec& spec, double beta, double h,
                      const DisorderSample& sample) {
  check_partition_budget(spec, sample.N);
  const int N = sample.N;
  auto unis = build_uniformities(spec, beta, sample);

  std::vector<std::uint8_t> s(N, 0);  // 0 = +1
  const double wdn = std::exp(-2.0 * h), wup = std::exp(2.0 * h);
  // start: all spins +1
  double v = 1.0;
  {
    double logv = -double(N) * std::log1p(std::exp(-2.0 * h));  // log prod e^h/(2cosh h) = -N log(1+e^{-2h})
    for (auto& u : unis)
      for (double t : u.t) logv += std::log1p(t);
    v = std::exp(logv);
  }

  auto recompute = [&]() {
    int minus = 0;
    for (int i = 0; i < N; ++i) minus += s[i];
    // log prod_j e^{h sigma_j} / (2 cosh h)
    double logv = (N - 2 * minus) * h - N * std::log(2.0 * std::cosh(h));
    for (auto& u : unis) {
      const EdgeSet& es = edge_set(N, u.p);
      for (std::size_t e = 0; e < es.masks.size(); ++e) {
        int par = 0;
        for (int i = 0; i < u.p; ++i) par ^= s[es.verts[e][i]];
        logv += std::log1p(par ? -u.t[e] : u.t[e]);
      }
    }
    v = std::exp(logv);
  };

  KahanSum acc;
  acc.add(v);
  const std::uint64_t total = 1ull << N;
  const std::uint64_t renorm_mask = (1ull << 15) - 1;
  for (std::uint64_t step = 1; step < total; ++step) {
    int flip = std::countr_zero(step);
    std::uint8_t sv = s[flip];
    double mult = sv ? wup : wdn;  // sigma_v: +1 -> -1 loses e^{2h}
    for (auto& u : unis) {
      const auto& entries = u.ft->per_vertex[flip];
      const double* ratio = u.ratio.data();
      if (u.p == 3) {
        for (const auto& en : entries) {
          std::uint8_t bit = sv ^ s[en.others[0]] ^ s[en.others[1]];
          mult *= ratio[2 * en.edge + bit];
        }
      } else if (u.p == 4) {
        for (const auto& en : entries) {
          std::uint8_t bit =
              sv ^ s[en.others[0]] ^ s[en.others[1]] ^ s[en.others[2]];
          mult *= ratio[2 * en.edge + bit];
        }
      } else {
        for (const auto& en : entries) {
          std::uint8_t bit = sv;
          for (int i = 0; i + 1 < u.p; ++i) bit ^= s[en.others[i]];
          mult *= ratio[2 * en.edge + bit];
        }
      }
    }
    s[flip] ^= 1;
    v *= mult;
    if ((step & renorm_mask) == 0) recompute();
    acc.add(v);
  }
  return std::log(acc.value());
}

double log_z_direct(const MixtureSpec& spec, double beta, double h,
                    const DisorderSample& sample) {
  check_partition_budget(spec, sample.N);
  const int N = sample.N;
  auto unis = build_uniformities(spec, beta, sample);

  std::vector<std::uint8_t> s(N, 0);
  double H = 0.0;  // beta Hamiltonian plus field term, all spins +1
  for (auto& u : unis)
    for (double c : u.coupling) H += c;
  double M = double(N);

  auto recompute = [&]() {
    double acc = 0.0;
    int minus = 0;
    for (int i = 0; i < N; ++i) minus += s[i];
    M = double(N - 2 * minus);
    for (auto& u : unis) {
      const EdgeSet& es = edge_set(N, u.p);
      for (std::size_t e = 0; e < es.masks.size(); ++e) {
        int par = 0;
        for (int i = 0; i < u.p; ++i) par ^= s[es.verts[e][i]];
        acc += par ? -u.coupling[e] : u.coupling[e];
      }
    }
    H = acc;
  };

  // streaming log-sum-exp of H + h M
  double mx = H + h * M;
  double sum = 1.0;
  const std::uint64_t total = 1ull << N;
  const std::uint64_t renorm_mask = (1ull << 14) - 1;
  for (std::uint64_t step = 1; step < total; ++step) {
    int flip = std::countr_zero(step);
    std::uint8_t sv = s[flip];
    double dh = 0.0;
    for (auto& u : unis) {
      const auto& entries = u.ft->per_vertex[flip];
      for (const auto& en : entries) {
        std::uint8_t bit = sv;
        for (int i = 0; i + 1 < u.p; ++i) bit ^= s[en.others[i]];
        // flipping sigma_v negates this edge term
        dh += bit ? 2.0 * u.coupling[en.edge] : -2.0 * u.coupling[en.edge];
      }
    }
    H += dh;
    M += sv ? 2.0 : -2.0;
    s[flip] ^= 1;
    if ((step & renorm_mask) == 0) recompute();
    double x = H + h * M;
    if (x > mx) {
      sum = sum * std::exp(mx - x) + 1.0;
      mx = x;
    } else {
      sum += std::exp(x - mx);
    }
  }
  return mx + std::log(sum);
}

PartitionBreakdown exact_partition(const MixtureSpec& spec, double beta,
                                   double h, const DisorderSample& sample) {
  PartitionBreakdown r;
  r.h = h;
  r.log_z = log_z_direct(spec, beta, h, sample);
  r.log_zbar = log_zbar(spec, beta, sample);
  r.log_zhat = log_zhat_exact(spec, beta, h, sample);
  double nlog2cosh = sample.N * std::log(2.0 * std::cosh(h));
  r.residual = std::fabs(r.log_z - nlog2cosh - r.log_zbar - r.log_zhat) /
               (1.0 + std::fabs(r.log_z));
  return r;
}

double truncated_zhat(const MixtureSpec& spec, double beta, double h,
                      const DisorderSample& sample, int max_edges, int max_p) {
  const int N = sample.N;
  if (max_edges < 0) throw std::invalid_argument("truncated_zhat: max_edges < 0");
  if (max_edges == 0) return 1.0;
  double edges = 0;
  for (const auto& [p, th] : spec.theta())
    if (p <= max_p) edges += binom_d(N, p);
  double cost = std::ldexp(edges * (max_edges + 1), N);
  if (N > 22 || cost > 2e9)
    throw BudgetError("truncated_zhat over budget", cost, 2e9);

  struct Ed {
    std::uint64_t mask;
    double t;
  };
  std::vector<Ed> eds;
  for (const auto& [p, th] : spec.theta()) {
    if (p > max_p) continue;
    const EdgeSet& es = edge_set(N, p);
    const auto& J = sample.at(p);
    double scale = beta * th * std::pow(double(N), -(p - 1) / 2.0);
    for (std::size_t e = 0; e < es.masks.size(); ++e)
      eds.push_back({es.masks[e], std::tanh(scale * J[e])});
  }

  // E_h of the edge-count generating polynomial, truncated at max_edges.
  const double logw_plus = h - std::log(2.0 * std::cosh(h));
  const double logw_minus = -h - std::log(2.0 * std::cosh(h));
  std::vector<double> poly(max_edges + 1);
  KahanSum acc[8];  // indexed by edge count
  const std::uint64_t total = 1ull << N;
  if (max_edges > 7) throw BudgetError("truncated_zhat: max_edges > 7", max_edges, 7);
  for (std::uint64_t sigma = 0; sigma < total; ++sigma) {
    int minus = std::popcount(sigma);
    double w = std::exp(logw_plus * (N - minus) + logw_minus * minus);
    std::fill(poly.begin(), poly.end(), 0.0);
    poly[0] = 1.0;
    for (const auto& ed : eds) {
      double st = (std::popcount(sigma & ed.mask) & 1) ? -ed.t : ed.t;
      for (int j = max_edges; j >= 1; --j) poly[j] += poly[j - 1] * st;
    }
    for (int j = 0; j <= max_edges; ++j) acc[j].add(w * poly[j]);
  }
  double zh = 0.0;
  for (int j = 0; j <= max_edges; ++j) zh += acc[j].value();
  return zh;
}

}  // namespace glasslab
