#include "glasslab/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "glasslab/betac.hpp"
#include "glasslab/common.hpp"
#include "glasslab/partition.hpp"
#include "glasslab/weights.hpp"

namespace glasslab {

int resolve_threads(int requested) {
  int hw = int(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int n = requested > 0 ? requested : hw;
  if (const char* env = std::getenv("GLASSLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

namespace {

// Replica-indexed parallel for; slot writes keep results independent of the
// scheduling, so worker count never changes any output.
void parallel_replicas(int replicas, int threads,
                       const std::function<void(int)>& work) {
  if (threads <= 1) {
    for (int r = 0; r < replicas; ++r) work(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      while (true) {
        int r = next.fetch_add(1);
        if (r >= replicas) break;
        work(r);
      }
    });
  for (auto& th : pool) th.join();
}

// Truncated-cluster proxy for log Zhat when the exact scan is out of reach:
// log(1 + sum of template cluster weights V_c over the candidate set).
double log_zhat_proxy(const WeightContext& ctx,
                      const std::vector<ClusterStructure>& proxy_set,
                      double h_hat) {
  double v = 0.0;
  for (const auto& c : proxy_set) v += cluster_V(ctx, c, h_hat);
  return std::log1p(v);
}

std::vector<ClusterStructure> proxy_structures(const MixtureSpec& spec,
                                               bool zero_field) {
  // Template-supported structures with up to 4 edges over the effective
  // uniformities; at h = 0 only even-boundary ones contribute.
  std::vector<ClusterStructure> out;
  auto consider = [&](const ClusterStructure& c) {
    if (zero_field && c.odd_vertices > 0) return;
    if (has_closed_form(c)) out.push_back(c);
  };
  std::vector<int> ps;
  for (const auto& [p, th] : spec.theta())
    if (p >= 3) ps.push_back(p);
  for (int p : ps) {
    for (auto [a, l] : std::initializer_list<std::pair<int, int>>{
             {1, p}, {2, 2}, {3, 0}, {3, 1}, {4, 0}})
      if ((a * p + l) % 2 == 0) consider(ClusterStructure({{a, p}}, l));
  }
  if (ps.size() == 2) {
    int pe = ps[0] % 2 == 0 ? ps[0] : ps[1];
    int po = ps[0] % 2 == 0 ? ps[1] : ps[0];
    if (pe % 2 == 0 && po % 2 == 1) {
      if (pe <= 2 * po) consider(ClusterStructure({{1, pe}, {2, po}}, 0));
      if (std::abs(pe - po) == 1) consider(ClusterStructure({{1, pe}, {1, po}}, 1));
    }
  }
  return out;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
  if (cfg.replicas < 1 || cfg.replicas > 100000)
    throw std::invalid_argument("run_ensemble: replicas must be in 1..1e5");
  EnsembleResult res;
  res.beta_c = beta_c(cfg.spec).beta_c;
  res.beta = cfg.beta_frac * res.beta_c;
  if (!(cfg.beta_frac > 0.0 && cfg.beta_frac < 1.0))
    throw std::invalid_argument("run_ensemble: beta_frac must be in (0,1)");
  const int threads = resolve_threads(cfg.threads);

  for (int N : cfg.N_list) {
    CellData cell;
    cell.N = N;
    cell.beta = res.beta;
    cell.h = cfg.field.h(N);
    cell.exact_route = N <= cfg.max_exact_n;
    cell.log_zhat.assign(cfg.replicas, 0.0);
    cell.log_zbar.assign(cfg.replicas, 0.0);
    for (const auto& c : cfg.structures)
      cell.W[c.to_string()].assign(cfg.replicas, 0.0);

    std::vector<ClusterStructure> proxy;
    if (!cell.exact_route)
      proxy = proxy_structures(cfg.spec, cfg.field.is_zero());

    try {
      // budget probe before fanning out
      if (cell.exact_route) {
        DisorderSample probe = draw_disorder(cfg.spec, N, cfg.dist, cfg.seed, 0);
        (void)probe;
        double edges = 0;
        for (const auto& [p, th] : cfg.spec.theta()) edges += binom_d(N, p);
        if (N > 22 || edges > 1e5)
          throw BudgetError("ensemble exact route over budget",
                            std::max(double(N), edges), N > 22 ? 22 : 1e5);
      }
      std::atomic<bool> failed{false};
      std::string error_msg;
      std::mutex err_mu;
      parallel_replicas(cfg.replicas, threads, [&](int r) {
        if (failed.load()) return;
        try {
          DisorderSample sample =
              draw_disorder(cfg.spec, N, cfg.dist, cfg.seed, std::uint64_t(r));
          cell.log_zbar[r] = log_zbar(cfg.spec, res.beta, sample);
          if (cell.exact_route) {
            cell.log_zhat[r] =
                log_zhat_exact(cfg.spec, res.beta, cell.h, sample);
          } else {
            WeightContext ctx(cfg.spec, res.beta, sample);
            cell.log_zhat[r] =
                log_zhat_proxy(ctx, proxy, std::tanh(cell.h));
          }
          if (!cfg.structures.empty()) {
            WeightContext ctx(cfg.spec, res.beta, sample);
            for (const auto& c : cfg.structures)
              cell.W[c.to_string()][r] = cluster_weight_W(ctx, c);
          }
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mu);
          error_msg = e.what();
          failed.store(true);
        }
      });
      if (failed.load()) cell.error = error_msg;
    } catch (const BudgetError& e) {
      cell.error = e.what();
    }
    res.cells.push_back(std::move(cell));
  }
  return res;
}

ZbarStats zbar_stats(const MixtureSpec& spec, double beta, int N, int replicas,
                     std::uint64_t seed, Disorder dist, int threads) {
  if (replicas < 1 || replicas > 1000000)
    throw std::invalid_argument("zbar_stats: replicas must be in 1..1e6");
  ZbarStats out;
  out.N = N;
  out.replicas = replicas;
  out.beta = beta;
  std::vector<double> vals(replicas);
  parallel_replicas(replicas, resolve_threads(threads), [&](int r) {
    DisorderSample s = draw_disorder(spec, N, dist, seed, std::uint64_t(r));
    vals[r] = log_zbar(spec, beta, s);
  });
  out.empirical = summarize(vals);

  out.var_j2 = moment4(dist) - 1.0;
  for (const auto& [p, th] : spec.theta()) {
    double c = binom_d(N, p);
    out.mean_target += c * logcosh_mean(N, p, beta, th, dist);
    out.var_target_exact += c * logcosh_var(N, p, beta, th, dist);
  }
  int pm = spec.p_min();
  double thm = spec.theta_at(pm);
  out.var_target_leading = std::pow(beta, 4) * std::pow(thm, 4) *
                           binom_d(N, pm) * out.var_j2 /
                           (4.0 * std::pow(double(N), 2.0 * pm - 2.0));
  return out;
}

FreeEnergyRegimeReport freeenergy_regime_check(
    const MixtureSpec& spec, double alpha, double beta_frac,
    const std::vector<int>& N_list, int replicas, std::uint64_t seed,
    Disorder dist, int threads, double rho) {
  FreeEnergyRegimeReport rep;
  rep.alpha = alpha;
  int pm = spec.p_min();
  rep.threshold = (pm - 1.0) / (2.0 * pm);
  rep.slope_zbar = -(pm - 2.0);
  rep.slope_cluster = -(2.0 * alpha * pm - 1.0);
  rep.expected = alpha > rep.threshold ? "zbar"
                 : alpha < rep.threshold ? "cluster"
                                         : "threshold";

  EnsembleConfig cfg;
  cfg.spec = spec;
  cfg.beta_frac = beta_frac;
  cfg.field = std::isinf(alpha) ? ExternalField() : ExternalField(rho, alpha);
  cfg.N_list = N_list;
  cfg.replicas = replicas;
  cfg.dist = dist;
  cfg.seed = seed;
  cfg.threads = threads;
  EnsembleResult er = run_ensemble(cfg);

  std::vector<double> lx, ly;
  for (const auto& cell : er.cells) {
    if (!cell.error.empty())
      throw std::runtime_error("freeenergy_regime_check: " + cell.error);
    // centered log Z: the deterministic N log(2cosh h) term drops out of the
    // variance, so sum the two fluctuating pieces directly.
    std::vector<double> logz(cell.log_zhat.size());
    for (std::size_t i = 0; i < logz.size(); ++i)
      logz[i] = cell.log_zbar[i] + cell.log_zhat[i];
    MomentSummary ms = summarize(logz);
    rep.Ns.push_back(cell.N);
    rep.var_logz.push_back(ms.var);
    lx.push_back(std::log(double(cell.N)));
    ly.push_back(std::log(ms.var));
  }
  rep.fit = fit_line(lx, ly);
  double d_zbar = std::fabs(rep.fit.slope - rep.slope_zbar);
  double d_cluster = std::fabs(rep.fit.slope - rep.slope_cluster);
  if (std::fabs(d_zbar - d_cluster) < rep.fit.se_slope)
    rep.winner = "threshold";
  else
    rep.winner = d_zbar < d_cluster ? "zbar" : "cluster";
  rep.matches = rep.winner == rep.expected ||
                (rep.expected == "threshold" && rep.winner != "");
  return rep;
}

}  // namespace glasslab
