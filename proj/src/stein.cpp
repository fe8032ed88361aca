#include "glasslab/stein.hpp"

#include <cmath>

#include "glasslab/common.hpp"
#include "glasslab/quadrature.hpp"

namespace glasslab {

namespace {

double union_edges(const MixtureSpec& spec, int N) {
  double m = 0;
  for (const auto& [p, th] : spec.theta()) m += binom_d(N, p);
  return m;
}

LinearityResult check_one(const WeightContext& ctx, double n_pool, int k,
                          const std::string& name, double W,
                          const CompletionSums& cs) {
  LinearityResult r;
  r.structure = name;
  r.lambda = k / n_pool;
  r.W = W;
  KahanSum s;
  for (std::size_t i = 0; i < cs.total_edges; ++i) s.add(cs.omega[i] * cs.T[i]);
  r.lhs = -s.value() / n_pool;
  r.residual = std::fabs(r.lhs + r.lambda * r.W);
  r.pass = r.residual <= 1e-10 * (1.0 + std::fabs(r.W));
  return r;
}

}  // namespace

double pair_lambda(const ExchangeablePairConfig& cfg, int N,
                   const ClusterStructure& c) {
  return c.total_edges() / union_edges(cfg.spec, N);
}

std::vector<LinearityResult> linearity_check(const ExchangeablePairConfig& cfg,
                                             const DisorderSample& sample) {
  WeightContext ctx(cfg.spec, cfg.beta, sample);
  double n_pool = union_edges(cfg.spec, sample.N);
  std::vector<LinearityResult> out;
  for (const auto& c : cfg.structures) {
    double W = cluster_weight_W(ctx, c);
    CompletionSums cs = completion_sums(ctx, c);
    out.push_back(check_one(ctx, n_pool, c.total_edges(), c.to_string(), W, cs));
  }
  return out;
}

std::vector<LinearityResult> linearity_check_profiles(
    const ExchangeablePairConfig& cfg, int p, const DisorderSample& sample) {
  WeightContext ctx(cfg.spec, cfg.beta, sample);
  double n_pool = union_edges(cfg.spec, sample.N);
  std::vector<LinearityResult> out;
  for (const auto& d : intersection_profiles(p)) {
    double W = cluster_weight_W_profile(ctx, p, d);
    CompletionSums cs = completion_sums_profile(ctx, p, d);
    out.push_back(
        check_one(ctx, n_pool, 4, "4x" + std::to_string(p) + d.to_string(), W, cs));
  }
  return out;
}

AbcdValues abcd_values(const WeightContext& ctx, const ClusterStructure& c) {
  if (c.edges.size() != 1)
    throw std::invalid_argument("abcd_values: pure structures only");
  const int p = c.edges[0].second;
  const int k = c.edges[0].first;
  const double m2 = ctx.m2(p);
  CompletionSums cs = completion_sums(ctx, c);

  double m2km1 = 1.0;
  for (int i = 0; i < k - 1; ++i) m2km1 *= m2;

  KahanSum A, B, C, D, lhs;
  for (std::size_t i = 0; i < cs.total_edges; ++i) {
    double w = cs.omega[i];
    double xi = w * w - m2;
    double t2 = cs.T[i] * cs.T[i];
    A.add(xi * cs.U[i]);
    B.add(cs.U[i] - cs.count[i] * m2km1);
    C.add(0.5 * xi * (t2 - cs.U[i]));
    D.add(0.5 * (t2 - cs.U[i]));
    lhs.add((m2 + w * w) * t2);
  }
  AbcdValues v;
  v.A = A.value();
  v.B = B.value();
  v.C = C.value();
  v.D = D.value();
  v.nu2 = exact_weight_variance(ctx, c);
  double m2k = m2km1 * m2;
  double count = double(closed_form_count(ctx.N(), c));
  double target = lhs.value() - 2.0 * k * m2k * count;
  double decomposition = v.A + 2.0 * m2 * v.B + 2.0 * v.C + 4.0 * m2 * v.D;
  v.identity_residual =
      std::fabs(target - decomposition) / (1.0 + std::fabs(target));
  return v;
}

namespace {

ScalingDiagnostic fit_diag(const std::vector<int>& Ns,
                           const std::vector<double>& vals, double ref,
                           double slack) {
  ScalingDiagnostic d;
  d.Ns = Ns;
  d.normalized = vals;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    lx.push_back(std::log(double(Ns[i])));
    ly.push_back(std::log(std::max(vals[i], 1e-300)));
  }
  d.fit = fit_line(lx, ly);
  d.reference_exponent = ref;
  d.slack = slack;
  d.within_slack = d.fit.slope <= ref + slack;
  return d;
}

}  // namespace

AbcdDiagnostic conditional_variance_diagnostic(
    const ExchangeablePairConfig& cfg, const ClusterStructure& c,
    const std::vector<int>& N_list, int replicas, std::uint64_t seed,
    int threads) {
  (void)threads;
  const int p = c.edges.at(0).second;
  AbcdDiagnostic out;
  std::vector<double> a2, b2, c2, d2;
  for (int N : N_list) {
    if (N > 12) throw BudgetError("abcd diagnostic: N over budget", N, 12);
    double sa = 0, sb = 0, sc = 0, sd = 0, nu4 = 0;
    for (int r = 0; r < replicas; ++r) {
      DisorderSample s = draw_disorder(cfg.spec, N, cfg.dist, seed, r);
      WeightContext ctx(cfg.spec, cfg.beta, s);
      AbcdValues v = abcd_values(ctx, c);
      sa += v.A * v.A;
      sb += v.B * v.B;
      sc += v.C * v.C;
      sd += v.D * v.D;
      nu4 = v.nu2 * v.nu2;
      out.worst_identity_residual =
          std::max(out.worst_identity_residual, v.identity_residual);
    }
    a2.push_back(sa / replicas / nu4);
    b2.push_back(sb / replicas / nu4);
    c2.push_back(sc / replicas / nu4);
    d2.push_back(sd / replicas / nu4);
  }
  const double slack = 1.0;
  out.a = fit_diag(N_list, a2, -double(p), slack);
  out.b = fit_diag(N_list, b2, -double(p), slack);
  out.c = fit_diag(N_list, c2, -double(p), slack);
  out.d = fit_diag(N_list, d2, -double(p), slack);
  return out;
}

ScalingDiagnostic third_moment_diagnostic(const ExchangeablePairConfig& cfg,
                                          const ClusterStructure& c,
                                          const std::vector<int>& N_list,
                                          int replicas, std::uint64_t seed,
                                          int threads) {
  (void)threads;
  const int p = c.edges.at(0).second;
  const double theta = cfg.spec.theta_at(p);
  std::vector<double> ys;
  for (int N : N_list) {
    double n_pool = union_edges(cfg.spec, N);
    double scale = cfg.beta * theta * std::pow(double(N), -(p - 1) / 2.0);
    double unscale = std::pow(double(N), (p - 1) / 2.0);
    // E over the resampled weight of |omega' - a|^3
    auto eabs3 = [&](double a) {
      switch (cfg.dist) {
        case Disorder::rademacher: {
          double w0 = unscale * std::tanh(scale);
          return 0.5 * (std::pow(std::fabs(w0 - a), 3) +
                        std::pow(std::fabs(w0 + a), 3));
        }
        case Disorder::gaussian: {
          static const QuadratureRule q = gauss_hermite_prob(64);
          double s = 0;
          for (std::size_t i = 0; i < q.x.size(); ++i) {
            double w = unscale * std::tanh(scale * q.x[i]);
            s += q.w[i] * std::pow(std::fabs(w - a), 3);
          }
          return s;
        }
        case Disorder::uniform_symmetric: {
          const double bnd = 1.7320508075688772935;
          static const QuadratureRule q = gauss_legendre(64, -bnd, bnd);
          double s = 0;
          for (std::size_t i = 0; i < q.x.size(); ++i) {
            double w = unscale * std::tanh(scale * q.x[i]);
            s += q.w[i] * std::pow(std::fabs(w - a), 3) / (2.0 * bnd);
          }
          return s;
        }
      }
      return 0.0;
    };

    double acc = 0, nu3 = 0;
    for (int r = 0; r < replicas; ++r) {
      DisorderSample s = draw_disorder(cfg.spec, N, cfg.dist, seed, r);
      WeightContext ctx(cfg.spec, cfg.beta, s);
      CompletionSums cs = completion_sums(ctx, c);
      KahanSum e3;
      for (std::size_t i = 0; i < cs.total_edges; ++i)
        e3.add(eabs3(cs.omega[i]) * std::pow(std::fabs(cs.T[i]), 3));
      acc += e3.value() / n_pool;
      nu3 = std::pow(exact_weight_variance(ctx, c), 1.5);
    }
    ys.push_back(n_pool * (acc / replicas) / nu3);
  }
  return fit_diag(N_list, ys, -p / 2.0, 0.75);
}

}  // namespace glasslab
