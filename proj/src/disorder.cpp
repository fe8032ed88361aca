#include "glasslab/disorder.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "glasslab/common.hpp"
#include "glasslab/quadrature.hpp"

namespace glasslab {

std::string disorder_name(Disorder d) {
  switch (d) {
    case Disorder::rademacher: return "rademacher";
    case Disorder::gaussian: return "gaussian";
    case Disorder::uniform_symmetric: return "uniform-symmetric";
  }
  return "?";
}

Disorder disorder_from_name(const std::string& s) {
  if (s == "rademacher") return Disorder::rademacher;
  if (s == "gaussian") return Disorder::gaussian;
  if (s == "uniform-symmetric" || s == "uniform") return Disorder::uniform_symmetric;
  throw std::invalid_argument("unknown disorder '" + s + "'");
}

namespace {
inline std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::derive(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix(s);
  s = h ^ (a * 0xd1342543de82ef95ull + 1);
  h = splitmix(s);
  s = h ^ (b * 0xaf251af3b0f025b5ull + 1);
  h = splitmix(s);
  s = h ^ (c * 0x9e3779b97f4a7c15ull + 1);
  return splitmix(s);
}

std::uint64_t Rng::next_u64() { return splitmix(state_); }

double Rng::next_u01() {
  // (0,1]: never returns 0, which keeps log() finite below.
  return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-53;
}

double Rng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_u01();
  double u2 = next_u01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::next_symmetric(Disorder d) {
  switch (d) {
    case Disorder::rademacher: return (next_u64() & 1) ? 1.0 : -1.0;
    case Disorder::gaussian: return next_normal();
    case Disorder::uniform_symmetric:
      return (2.0 * next_u01() - 1.0) * 1.7320508075688772935;
  }
  return 0.0;
}

const EdgeSet& edge_set(int N, int p) {
  static std::map<std::pair<int, int>, EdgeSet> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(N, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (p > 8) throw std::invalid_argument("edge_set: p > 8 unsupported");
  if (N > 63) throw std::invalid_argument("edge_set: N > 63 unsupported");
  EdgeSet es;
  es.N = N;
  es.p = p;
  if (N >= p) {
    std::vector<int> idx(p);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint64_t m = 0;
      std::array<std::uint8_t, 8> vs{};
      for (int i = 0; i < p; ++i) {
        m |= 1ull << idx[i];
        vs[i] = std::uint8_t(idx[i]);
      }
      es.masks.push_back(m);
      es.verts.push_back(vs);
      int i = p - 1;
      while (i >= 0 && idx[i] == N - p + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(es)).first->second;
}

DisorderSample draw_disorder(const MixtureSpec& spec, int N, Disorder dist,
                             std::uint64_t master_seed, std::uint64_t replica) {
  DisorderSample s;
  s.N = N;
  s.dist = dist;
  s.master_seed = master_seed;
  s.replica = replica;
  for (const auto& [p, th] : spec.theta()) {
    const EdgeSet& es = edge_set(N, p);
    Rng rng(Rng::derive(master_seed, std::uint64_t(N), replica, std::uint64_t(p)));
    std::vector<double> J(es.masks.size());
    for (double& x : J) x = rng.next_symmetric(dist);
    s.J[p] = std::move(J);
  }
  return s;
}

namespace {

// E f(J) for the three disorder laws; quadrature where a density exists.
double expect(Disorder dist, const std::function<double(double)>& f);

double expect(Disorder dist, const std::function<double(double)>& f) {
  switch (dist) {
    case Disorder::rademacher:
      return 0.5 * (f(1.0) + f(-1.0));
    case Disorder::gaussian: {
      static const QuadratureRule q = gauss_hermite_prob(64);
      double s = 0.0;
      for (std::size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(q.x[i]);
      return s;
    }
    case Disorder::uniform_symmetric: {
      const double a = 1.7320508075688772935;
      static const QuadratureRule q = gauss_legendre(64, -a, a);
      double s = 0.0;
      for (std::size_t i = 0; i < q.x.size(); ++i)
        s += q.w[i] * f(q.x[i]) / (2.0 * a);
      return s;
    }
  }
  return 0.0;
}

}  // namespace

double edge_second_moment(int N, int p, double beta, double theta,
                          Disorder dist) {
  double scale = beta * theta * std::pow(double(N), -(p - 1) / 2.0);
  double e = expect(dist, [&](double j) {
    double t = std::tanh(scale * j);
    return t * t;
  });
  return std::pow(double(N), p - 1.0) * e;
}

double logcosh_mean(int N, int p, double beta, double theta, Disorder dist) {
  double scale = beta * theta * std::pow(double(N), -(p - 1) / 2.0);
  return expect(dist, [&](double j) { return std::log(std::cosh(scale * j)); });
}

double logcosh_var(int N, int p, double beta, double theta, Disorder dist) {
  double m = logcosh_mean(N, p, beta, theta, dist);
  double scale = beta * theta * std::pow(double(N), -(p - 1) / 2.0);
  double m2 = expect(dist, [&](double j) {
    double v = std::log(std::cosh(scale * j));
    return v * v;
  });
  return m2 - m * m;
}

double moment4(Disorder dist) {
  switch (dist) {
    case Disorder::rademacher: return 1.0;
    case Disorder::gaussian: return 3.0;
    case Disorder::uniform_symmetric: return 9.0 / 5.0;
  }
  return 0.0;
}

}  // namespace glasslab
