#include "glasslab/multispecies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "glasslab/common.hpp"
#include "glasslab/entropy.hpp"

namespace glasslab {

namespace {

// Multi-index enumeration over {0..k-1}^p restricted to sorted tuples.
void sorted_tuples(int k, int p, std::vector<int>& cur,
                   const std::function<void(const std::vector<int>&)>& emit) {
  if (int(cur.size()) == p) {
    emit(cur);
    return;
  }
  int start = cur.empty() ? 0 : cur.back();
  for (int s = start; s < k; ++s) {
    cur.push_back(s);
    sorted_tuples(k, p, cur, emit);
    cur.pop_back();
  }
}

std::size_t flat_index(const std::vector<int>& idx, int k) {
  std::size_t r = 0;
  for (int s : idx) r = r * k + std::size_t(s);
  return r;
}

// Number of distinct permutations of a sorted multi-index.
double multiplicity(const std::vector<int>& idx) {
  double perms = std::tgamma(idx.size() + 1.0);
  int run = 1;
  for (std::size_t i = 1; i <= idx.size(); ++i) {
    if (i < idx.size() && idx[i] == idx[i - 1]) {
      ++run;
    } else {
      perms /= std::tgamma(run + 1.0);
      run = 1;
    }
  }
  return perms;
}

}  // namespace

MultiSpeciesSpec::MultiSpeciesSpec(std::vector<double> lambda,
                                   std::map<int, std::vector<double>> delta2_flat)
    : k_(int(lambda.size())), lambda_(std::move(lambda)) {
  if (k_ < 1 || k_ > 6)
    throw std::invalid_argument("MultiSpeciesSpec: species count must be in 1..6");
  double sum = 0.0;
  for (double l : lambda_) {
    if (!(l > 0.0)) throw std::invalid_argument("MultiSpeciesSpec: lambda_s must be > 0");
    sum += l;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("MultiSpeciesSpec: lambda must sum to 1");

  bool any = false;
  for (const auto& [p, flat] : delta2_flat) {
    if (p < 2 || p > 6)
      throw std::invalid_argument("MultiSpeciesSpec: uniformity p must be in 2..6");
    std::size_t expect = 1;
    for (int i = 0; i < p; ++i) expect *= std::size_t(k_);
    if (flat.size() != expect)
      throw std::invalid_argument("MultiSpeciesSpec: Delta_p^2 has wrong size");
    // Symmetry under index permutation, checked against the sorted
    // representative entry.
    std::vector<int> idx(p, 0);
    for (std::size_t f = 0; f < flat.size(); ++f) {
      std::size_t rem = f;
      for (int i = p - 1; i >= 0; --i) {
        idx[i] = int(rem % k_);
        rem /= k_;
      }
      if (flat[f] < 0.0)
        throw std::invalid_argument("MultiSpeciesSpec: Delta_p^2 entries must be >= 0");
      std::vector<int> s = idx;
      std::sort(s.begin(), s.end());
      if (std::fabs(flat[f] - flat[flat_index(s, k_)]) > 1e-12)
        throw std::invalid_argument("MultiSpeciesSpec: Delta_p^2 is not symmetric");
    }
    // Collapse to sorted multi-indices.
    std::vector<int> cur;
    sorted_tuples(k_, p, cur, [&](const std::vector<int>& mi) {
      double d2 = flat[flat_index(mi, k_)];
      if (d2 == 0.0) return;
      double lam = 1.0;
      for (int s : mi) lam *= lambda_[s];
      double coef = multiplicity(mi) * lam * d2 / std::tgamma(p + 1.0);
      terms_.push_back({mi, coef});
      any = true;
    });
  }
  if (!any) throw std::invalid_argument("MultiSpeciesSpec: xi is identically zero");
}

double MultiSpeciesSpec::xi(const std::vector<double>& x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double prod = t.coef;
    for (int i : t.idx) prod *= x[i];
    s += prod;
  }
  return s;
}

MultiSpeciesSpec MultiSpeciesSpec::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<double> lambda = j.at("lambda").get<std::vector<double>>();
  std::map<int, std::vector<double>> delta2;
  std::function<void(const nlohmann::json&, std::vector<double>&)> flatten =
      [&](const nlohmann::json& node, std::vector<double>& out) {
        if (node.is_array())
          for (const auto& c : node) flatten(c, out);
        else
          out.push_back(node.get<double>());
      };
  for (auto it = j.at("delta2").begin(); it != j.at("delta2").end(); ++it) {
    std::vector<double> flat;
    flatten(it.value(), flat);
    delta2[std::stoi(it.key())] = std::move(flat);
  }
  return MultiSpeciesSpec(std::move(lambda), std::move(delta2));
}

BetaCResult beta_c_multispecies(const MultiSpeciesSpec& ms, double tol,
                                int starts, std::uint64_t seed) {
  const int k = ms.species();
  const double lo = 1e-6, hi = 1.0;
  auto objective = [&](const std::vector<double>& x) {
    double num = 0.0;
    for (int s = 0; s < k; ++s) num += ms.lambda()[s] * binary_entropy(x[s]);
    double den = ms.xi(x);
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    return num / den;
  };

  std::uint64_t state = seed;
  auto next_u01 = [&]() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return (z >> 11) * 0x1.0p-53;
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x(k, 1.0);
  for (int s = 0; s < std::max(starts, 1); ++s) {
    std::vector<double> x(k);
    if (s == 0)
      std::fill(x.begin(), x.end(), 0.5);
    else
      for (int i = 0; i < k; ++i) x[i] = lo + (hi - lo) * next_u01();
    double cur = objective(x);
    for (int sweep = 0; sweep < 200; ++sweep) {
      double prev = cur;
      for (int i = 0; i < k; ++i) {
        double xi_best = golden_min(
            [&](double xi_val) {
              std::vector<double> y = x;
              y[i] = xi_val;
              return objective(y);
            },
            lo, hi, 1e-12);
        x[i] = xi_best;
      }
      cur = objective(x);
      if (prev - cur < 1e-15 * (1.0 + std::fabs(prev))) break;
    }
    if (cur < best) {
      best = cur;
      best_x = x;
    }
  }

  BetaCResult r;
  r.method = BetaCResult::Method::multi_species;
  r.beta_c = std::sqrt(best);
  r.x_vec = best_x;
  r.x_star = best_x.size() == 1 ? best_x[0] : 0.0;
  r.tolerance_achieved = tol;
  return r;
}

}  // namespace glasslab
