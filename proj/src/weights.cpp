#include "glasslab/weights.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "glasslab/common.hpp"

namespace glasslab {

namespace {

const std::vector<std::uint64_t>& size_subsets(int N, int q) {
  static const std::vector<std::uint64_t> empty_only{0};
  if (q == 0) return empty_only;
  return edge_set(N, q).masks;
}

// All q-subsets of the set bits of m.
void for_submasks(std::uint64_t m, int q,
                  const std::function<void(std::uint64_t)>& fn) {
  std::vector<int> pos;
  for (int b = 0; b < 64; ++b)
    if (m >> b & 1) pos.push_back(b);
  const int n = int(pos.size());
  if (q > n) return;
  if (q == 0) {
    fn(0);
    return;
  }
  std::vector<int> idx(q);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::uint64_t sm = 0;
    for (int i : idx) sm |= 1ull << pos[i];
    fn(sm);
    int i = q - 1;
    while (i >= 0 && idx[i] == n - q + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct TemplateKind {
  enum Kind {
    single,       // (1,p;p)
    pair_l2,      // (2,p;2)
    triple_even,  // (3,p even;0)
    triple_odd,   // (3,p odd;1)
    quad,         // (4,p;0), summed over profiles
    mixed_120,    // (1_pe, 2_po; 0)
    mixed_111,    // (1_pe, 1_po; 1)
  } kind;
  int p = 0;   // uniformity (pure) or the single-edge uniformity (mixed_120)
  int po = 0;  // paired uniformity (mixed)
};

TemplateKind classify_template(const ClusterStructure& c) {
  if (!has_closed_form(c))
    throw std::invalid_argument("cluster_weight: unsupported template " +
                                c.to_string());
  if (c.edges.size() == 1) {
    auto [a, p] = c.edges[0];
    if (a == 1) return {TemplateKind::single, p, 0};
    if (a == 2) return {TemplateKind::pair_l2, p, 0};
    if (a == 3 && p % 2 == 0) return {TemplateKind::triple_even, p, 0};
    if (a == 3) return {TemplateKind::triple_odd, p, 0};
    return {TemplateKind::quad, p, 0};
  }
  auto [a1, p1] = c.edges[0];
  auto [a2, p2] = c.edges[1];
  if (c.odd_vertices == 0) {
    int pe = (a1 == 1) ? p1 : p2;
    int po = (a1 == 1) ? p2 : p1;
    return {TemplateKind::mixed_120, pe, po};
  }
  return {TemplateKind::mixed_111, std::max(p1, p2), std::min(p1, p2)};
}

// Ways the other three edges of a (4,p) profile-d structure can complete a
// given edge A; fn receives omega(B) omega(C) omega(D) once per labeled
// completion (6 per unordered one).
void quad_completions(const WeightContext& ctx, int p, std::uint64_t A,
                      const IntersectionProfile& d,
                      const std::function<void(double)>& fn) {
  const int N = ctx.N();
  int vals[3] = {d.x, d.y, d.z};
  std::sort(vals, vals + 3);
  do {
    int v1 = vals[0], v2 = vals[1], v3 = vals[2];
    for_submasks(A, v1, [&](std::uint64_t tab) {
      std::uint64_t remA = A & ~tab;
      for_submasks(remA, v2, [&](std::uint64_t tac) {
        std::uint64_t tad = remA & ~tac;
        const auto& l1 = size_subsets(N, v1);
        const auto& l2 = size_subsets(N, v2);
        const auto& l3 = size_subsets(N, v3);
        for (std::uint64_t tcd : l1) {
          if (tcd & A) continue;
          for (std::uint64_t tbd : l2) {
            if (tbd & (A | tcd)) continue;
            for (std::uint64_t tbc : l3) {
              if (tbc & (A | tcd | tbd)) continue;
              fn(ctx.omega_of(p, tab | tbd | tbc) *
                 ctx.omega_of(p, tcd | tac | tbc) *
                 ctx.omega_of(p, tcd | tbd | tad));
            }
          }
        }
      });
    });
  } while (std::next_permutation(vals, vals + 3));
}

void check_weight_budget(const WeightContext& ctx, const ClusterStructure& c) {
  int k = c.total_edges();
  int N = ctx.N();
  if (k <= 3 && N > 40)
    throw BudgetError("cluster_weight: N over budget for k <= 3", N, 40);
  if (k == 4 && N > 20)
    throw BudgetError("cluster_weight: N over budget for k = 4", N, 20);
}

}  // namespace

WeightContext::WeightContext(const MixtureSpec& spec, double beta,
                             const DisorderSample& sample)
    : spec_(&spec), N_(sample.N), beta_(beta), dist_(sample.dist) {
  for (const auto& [p, th] : spec.theta()) {
    const EdgeSet& es = edge_set(N_, p);
    const auto& J = sample.at(p);
    double scale = beta * th * std::pow(double(N_), -(p - 1) / 2.0);
    double unscale = std::pow(double(N_), (p - 1) / 2.0);
    std::vector<double> om(J.size());
    for (std::size_t e = 0; e < J.size(); ++e)
      om[e] = unscale * std::tanh(scale * J[e]);
    omega_[p] = std::move(om);
    m2_[p] = edge_second_moment(N_, p, beta, th, sample.dist);
    auto& rk = rank_[p];
    for (std::uint32_t e = 0; e < es.masks.size(); ++e) rk[es.masks[e]] = e;
  }
}

const std::vector<double>& WeightContext::omega(int p) const {
  return omega_.at(p);
}
const EdgeSet& WeightContext::edges(int p) const { return edge_set(N_, p); }
std::uint32_t WeightContext::index_of(int p, std::uint64_t mask) const {
  return rank_.at(p).at(mask);
}
double WeightContext::omega_of(int p, std::uint64_t mask) const {
  return omega_.at(p).at(rank_.at(p).at(mask));
}
double WeightContext::m2(int p) const { return m2_.at(p); }

double cluster_weight_W(const WeightContext& ctx, const ClusterStructure& c) {
  check_weight_budget(ctx, c);
  TemplateKind tk = classify_template(c);
  const int N = ctx.N();
  KahanSum W;

  switch (tk.kind) {
    case TemplateKind::single: {
      for (double w : ctx.omega(tk.p)) W.add(w);
      break;
    }
    case TemplateKind::pair_l2: {
      const int p = tk.p;
      const auto& shared = size_subsets(N, p - 1);
      for (std::uint64_t S : shared) {
        // private vertices a < b outside the shared block
        for (int a = 0; a < N; ++a) {
          if (S >> a & 1) continue;
          double wa = ctx.omega_of(p, S | (1ull << a));
          for (int b = a + 1; b < N; ++b) {
            if (S >> b & 1) continue;
            W.add(wa * ctx.omega_of(p, S | (1ull << b)));
          }
        }
      }
      break;
    }
    case TemplateKind::triple_even: {
      const int p = tk.p, q = p / 2;
      const auto& blocks = size_subsets(N, q);
      const std::size_t M = blocks.size();
      for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j) {
          if (blocks[i] & blocks[j]) continue;
          double wij = ctx.omega_of(p, blocks[i] | blocks[j]);
          std::uint64_t used = blocks[i] | blocks[j];
          for (std::size_t k = j + 1; k < M; ++k) {
            if (blocks[k] & used) continue;
            W.add(wij * ctx.omega_of(p, blocks[i] | blocks[k]) *
                  ctx.omega_of(p, blocks[j] | blocks[k]));
          }
        }
      break;
    }
    case TemplateKind::triple_odd: {
      const int p = tk.p, q = (p - 1) / 2;
      const auto& blocks = size_subsets(N, q);
      const auto& big = size_subsets(N, q + 1);
      const std::size_t M = blocks.size();
      for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j) {
          if (blocks[i] & blocks[j]) continue;
          std::uint64_t u2 = blocks[i] | blocks[j];
          for (std::uint64_t S3 : big) {
            if (S3 & u2) continue;
            double wb = ctx.omega_of(p, blocks[i] | S3);
            double wc = ctx.omega_of(p, blocks[j] | S3);
            std::uint64_t used = u2 | S3;
            for (int v = 0; v < N; ++v) {
              if (used >> v & 1) continue;
              W.add(wb * wc * ctx.omega_of(p, u2 | (1ull << v)));
            }
          }
        }
      break;
    }
    case TemplateKind::quad: {
      const int p = tk.p;
      for (int x = p - 1; x >= 1; --x)
        for (int y = std::min(x, p - x); y >= 1; --y) {
          int z = p - x - y;
          if (z < 0 || z > y) continue;
          W.add(cluster_weight_W_profile(ctx, p, {x, y, z}));
        }
      break;
    }
    case TemplateKind::mixed_120: {
      const int pe = tk.p, po = tk.po;
      const int q = pe / 2, r = po - pe / 2;
      const auto& half = size_subsets(N, q);
      const auto& mid = size_subsets(N, r);
      const std::size_t M = half.size();
      for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j) {
          if (half[i] & half[j]) continue;
          double we = ctx.omega_of(pe, half[i] | half[j]);
          std::uint64_t used = half[i] | half[j];
          for (std::uint64_t S : mid) {
            if (S & used) continue;
            W.add(we * ctx.omega_of(po, half[i] | S) *
                  ctx.omega_of(po, half[j] | S));
          }
        }
      break;
    }
    case TemplateKind::mixed_111: {
      const int big = tk.p, small = tk.po;
      const EdgeSet& es = ctx.edges(big);
      const auto& om = ctx.omega(big);
      for (std::size_t e = 0; e < es.masks.size(); ++e) {
        for (int i = 0; i < big; ++i) {
          std::uint64_t partner = es.masks[e] & ~(1ull << es.verts[e][i]);
          W.add(om[e] * ctx.omega_of(small, partner));
        }
      }
      break;
    }
  }
  return W.value();
}

double cluster_weight_W_profile(const WeightContext& ctx, int p,
                                const IntersectionProfile& d) {
  if (ctx.N() > 20)
    throw BudgetError("cluster_weight profile: N over budget", ctx.N(), 20);
  const int N = ctx.N();
  // Distinct assignments of (x,y,z) to the three pairings.
  std::vector<std::array<int, 3>> perms;
  int vals[3] = {d.x, d.y, d.z};
  std::sort(vals, vals + 3);
  do {
    perms.push_back({vals[0], vals[1], vals[2]});
  } while (std::next_permutation(vals, vals + 3));

  KahanSum W;
  for (auto [v1, v2, v3] : perms) {
    const auto& l1 = size_subsets(N, v1);
    const auto& l2 = size_subsets(N, v2);
    const auto& l3 = size_subsets(N, v3);
    for (std::uint64_t ab : l1)
      for (std::uint64_t cd : l1) {
        if (ab & cd) continue;
        if (v1 > 0 && ab == cd) continue;
        std::uint64_t u1 = ab | cd;
        for (std::uint64_t ac : l2) {
          if (ac & u1) continue;
          for (std::uint64_t bd : l2) {
            if (bd & (u1 | ac)) continue;
            if (v2 > 0 && ac == bd) continue;
            std::uint64_t u2 = u1 | ac | bd;
            for (std::uint64_t ad : l3) {
              if (ad & u2) continue;
              for (std::uint64_t bc : l3) {
                if (bc & (u2 | ad)) continue;
                if (v3 > 0 && ad == bc) continue;
                double wA = ctx.omega_of(p, ab | ac | ad);
                double wB = ctx.omega_of(p, ab | bd | bc);
                double wC = ctx.omega_of(p, cd | ac | bc);
                double wD = ctx.omega_of(p, cd | bd | ad);
                W.add(wA * wB * wC * wD);
              }
            }
          }
        }
      }
  }
  return W.value() / 24.0;
}

double cluster_V(const WeightContext& ctx, const ClusterStructure& c,
                 double h_hat) {
  double scale = 1.0;
  for (auto& [a, p] : c.edges)
    scale *= std::pow(double(ctx.N()), -a * (p - 1) / 2.0);
  double hpow = 1.0;
  for (int i = 0; i < c.odd_vertices; ++i) hpow *= h_hat;
  return hpow * scale * cluster_weight_W(ctx, c);
}

double cluster_weight_bruteforce(const WeightContext& ctx,
                                 const ClusterStructure& c, double budget) {
  const int N = ctx.N();
  double combos = 1.0;
  for (auto& [a, p] : c.edges) combos *= binom_d(int(binom_d(N, p)), a);
  if (combos > budget)
    throw BudgetError("cluster_weight_bruteforce over budget", combos, budget);

  KahanSum W;
  const int ell = c.odd_vertices;
  // nested combinations per uniformity, canonical filter (degrees <= 2)
  struct Group {
    int p;
    int a;
    const std::vector<std::uint64_t>* masks;
    const std::vector<double>* omega;
  };
  std::vector<Group> gs;
  for (auto& [a, p] : c.edges)
    gs.push_back({p, a, &ctx.edges(p).masks, &ctx.omega(p)});

  std::function<void(std::size_t, int, int, std::uint64_t, std::uint64_t,
                     std::uint64_t, double)>
      rec = [&](std::size_t g, int need, int from, std::uint64_t parity,
                std::uint64_t seen1, std::uint64_t seen2, double prod) {
        if (need == 0) {
          if (g + 1 < gs.size()) {
            rec(g + 1, gs[g + 1].a, 0, parity, seen1, seen2, prod);
          } else if (std::popcount(parity) == ell) {
            W.add(prod);
          }
          return;
        }
        const auto& masks = *gs[g].masks;
        const auto& om = *gs[g].omega;
        int limit = int(masks.size()) - need;
        for (int i = from; i <= limit; ++i) {
          std::uint64_t m = masks[i];
          if (seen2 & m) continue;  // some vertex would reach degree 3
          rec(g, need - 1, i + 1, parity ^ m, seen1 | m, seen2 | (seen1 & m),
              prod * om[i]);
        }
      };
  rec(0, gs[0].a, 0, 0, 0, 0, 1.0);
  return W.value();
}

namespace {

struct SlotMap {
  std::vector<int> ps;
  std::vector<std::size_t> offset;  // per uniformity start in the global list
};

}  // namespace

CompletionSums completion_sums(const WeightContext& ctx,
                               const ClusterStructure& c) {
  check_weight_budget(ctx, c);
  TemplateKind tk = classify_template(c);
  const int N = ctx.N();

  CompletionSums out;
  std::map<int, std::size_t> offset;
  for (const auto& [p, th] : ctx.spec().theta()) {
    offset[p] = out.ps.size();
    const auto& om = ctx.omega(p);
    for (std::uint32_t e = 0; e < om.size(); ++e) {
      out.ps.push_back(p);
      out.local.push_back(e);
      out.omega.push_back(om[e]);
    }
  }
  out.total_edges = out.ps.size();
  out.T.assign(out.total_edges, 0.0);
  out.U.assign(out.total_edges, 0.0);
  out.count.assign(out.total_edges, 0.0);

  auto slot = [&](int p, std::uint64_t mask) {
    return offset.at(p) + ctx.index_of(p, mask);
  };
  auto add = [&](std::size_t sl, double w, double mult) {
    out.T[sl] += w * mult;
    out.U[sl] += w * w * mult;
    out.count[sl] += mult;
  };

  switch (tk.kind) {
    case TemplateKind::single: {
      const int p = tk.p;
      const auto& om = ctx.omega(p);
      for (std::uint32_t e = 0; e < om.size(); ++e)
        add(offset.at(p) + e, 1.0, 1.0);  // empty completion
      break;
    }
    case TemplateKind::pair_l2: {
      const int p = tk.p;
      const EdgeSet& es = ctx.edges(p);
      for (std::uint32_t e = 0; e < es.masks.size(); ++e) {
        std::size_t sl = offset.at(p) + e;
        for (int i = 0; i < p; ++i) {
          std::uint64_t S = es.masks[e] & ~(1ull << es.verts[e][i]);
          for (int u = 0; u < N; ++u) {
            if (es.masks[e] >> u & 1) continue;
            add(sl, ctx.omega_of(p, S | (1ull << u)), 1.0);
          }
        }
      }
      break;
    }
    case TemplateKind::triple_even: {
      const int p = tk.p, q = p / 2;
      const EdgeSet& es = ctx.edges(p);
      const auto& blocks = size_subsets(N, q);
      for (std::uint32_t e = 0; e < es.masks.size(); ++e) {
        std::size_t sl = offset.at(p) + e;
        std::uint64_t A = es.masks[e];
        for_submasks(A, q, [&](std::uint64_t sab) {
          std::uint64_t sac = A & ~sab;
          for (std::uint64_t sbc : blocks) {
            if (sbc & A) continue;
            double w = ctx.omega_of(p, sab | sbc) * ctx.omega_of(p, sac | sbc);
            add(sl, w, 0.5);
          }
        });
      }
      break;
    }
    case TemplateKind::triple_odd: {
      const int p = tk.p, q = (p - 1) / 2;
      const EdgeSet& es = ctx.edges(p);
      const auto& qblocks = size_subsets(N, q);
      const auto& bblocks = size_subsets(N, q + 1);
      for (std::uint32_t e = 0; e < es.masks.size(); ++e) {
        std::size_t sl = offset.at(p) + e;
        std::uint64_t A = es.masks[e];
        // role with the degree-1 vertex inside this edge
        for (int i = 0; i < p; ++i) {
          std::uint64_t rest = A & ~(1ull << es.verts[e][i]);
          for_submasks(rest, q, [&](std::uint64_t sab) {
            std::uint64_t sac = rest & ~sab;
            for (std::uint64_t sbc : bblocks) {
              if (sbc & A) continue;
              double w =
                  ctx.omega_of(p, sab | sbc) * ctx.omega_of(p, sac | sbc);
              add(sl, w, 0.5);
            }
          });
        }
        // role without it
        for_submasks(A, q, [&](std::uint64_t s1) {
          std::uint64_t sbc = A & ~s1;
          for (std::uint64_t s2 : qblocks) {
            if (s2 & A) continue;
            std::uint64_t used = A | s2;
            for (int v = 0; v < N; ++v) {
              if (used >> v & 1) continue;
              double w = ctx.omega_of(p, s1 | s2 | (1ull << v)) *
                         ctx.omega_of(p, s2 | sbc);
              add(sl, w, 1.0);
            }
          }
        });
      }
      break;
    }
    case TemplateKind::quad: {
      const int p = tk.p;
      const EdgeSet& es = ctx.edges(p);
      std::vector<IntersectionProfile> profs;
      for (int x = p - 1; x >= 1; --x)
        for (int y = std::min(x, p - x); y >= 1; --y) {
          int z = p - x - y;
          if (z < 0 || z > y) continue;
          profs.push_back({x, y, z});
        }
      for (std::uint32_t e = 0; e < es.masks.size(); ++e) {
        std::size_t sl = offset.at(p) + e;
        for (const auto& d : profs)
          quad_completions(ctx, p, es.masks[e], d,
                           [&](double w) { add(sl, w, 1.0 / 6.0); });
      }
      break;
    }
    case TemplateKind::mixed_120: {
      const int pe = tk.p, po = tk.po;
      const int q = pe / 2, r = po - q;
      const auto& halves = size_subsets(N, q);
      const auto& mids = size_subsets(N, r);
      const EdgeSet& ese = ctx.edges(pe);
      for (std::uint32_t e = 0; e < ese.masks.size(); ++e) {
        std::size_t sl = offset.at(pe) + e;
        std::uint64_t E = ese.masks[e];
        for_submasks(E, q, [&](std::uint64_t s1) {
          std::uint64_t s2 = E & ~s1;
          for (std::uint64_t sm : mids) {
            if (sm & E) continue;
            double w = ctx.omega_of(po, s1 | sm) * ctx.omega_of(po, s2 | sm);
            add(sl, w, 0.5);
          }
        });
      }
      const EdgeSet& eso = ctx.edges(po);
      for (std::uint32_t e = 0; e < eso.masks.size(); ++e) {
        std::size_t sl = offset.at(po) + e;
        std::uint64_t O1 = eso.masks[e];
        for_submasks(O1, q, [&](std::uint64_t seo1) {
          std::uint64_t so12 = O1 & ~seo1;
          for (std::uint64_t seo2 : halves) {
            if (seo2 & O1) continue;
            double w = ctx.omega_of(pe, seo1 | seo2) *
                       ctx.omega_of(po, seo2 | so12);
            add(sl, w, 1.0);
          }
        });
      }
      break;
    }
    case TemplateKind::mixed_111: {
      const int big = tk.p, small = tk.po;
      const EdgeSet& esb = ctx.edges(big);
      for (std::uint32_t e = 0; e < esb.masks.size(); ++e) {
        std::size_t sl = offset.at(big) + e;
        for (int i = 0; i < big; ++i) {
          std::uint64_t partner = esb.masks[e] & ~(1ull << esb.verts[e][i]);
          add(sl, ctx.omega_of(small, partner), 1.0);
        }
      }
      const EdgeSet& ess = ctx.edges(small);
      for (std::uint32_t e = 0; e < ess.masks.size(); ++e) {
        std::size_t sl = offset.at(small) + e;
        for (int v = 0; v < N; ++v) {
          if (ess.masks[e] >> v & 1) continue;
          add(sl, ctx.omega_of(big, ess.masks[e] | (1ull << v)), 1.0);
        }
      }
      break;
    }
  }
  return out;
}

CompletionSums completion_sums_profile(const WeightContext& ctx, int p,
                                       const IntersectionProfile& d) {
  if (ctx.N() > 20)
    throw BudgetError("completion_sums_profile: N over budget", ctx.N(), 20);
  CompletionSums out;
  std::map<int, std::size_t> offset;
  for (const auto& [q, th] : ctx.spec().theta()) {
    offset[q] = out.ps.size();
    const auto& om = ctx.omega(q);
    for (std::uint32_t e = 0; e < om.size(); ++e) {
      out.ps.push_back(q);
      out.local.push_back(e);
      out.omega.push_back(om[e]);
    }
  }
  out.total_edges = out.ps.size();
  out.T.assign(out.total_edges, 0.0);
  out.U.assign(out.total_edges, 0.0);
  out.count.assign(out.total_edges, 0.0);
  const EdgeSet& es = ctx.edges(p);
  for (std::uint32_t e = 0; e < es.masks.size(); ++e) {
    std::size_t sl = offset.at(p) + e;
    quad_completions(ctx, p, es.masks[e], d, [&](double w) {
      out.T[sl] += w / 6.0;
      out.U[sl] += w * w / 6.0;
      out.count[sl] += 1.0 / 6.0;
    });
  }
  return out;
}

double exact_weight_variance(const WeightContext& ctx,
                             const ClusterStructure& c) {
  BigInt count = closed_form_count(ctx.N(), c);
  double v = double(count);
  for (auto& [a, p] : c.edges)
    for (int i = 0; i < a; ++i) v *= ctx.m2(p);
  return v;
}

}  // namespace glasslab
