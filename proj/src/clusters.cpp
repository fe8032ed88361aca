#include "glasslab/clusters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "glasslab/common.hpp"

namespace glasslab {

ClusterStructure::ClusterStructure(std::vector<std::pair<int, int>> e, int ell)
    : edges(std::move(e)), odd_vertices(ell) {
  if (edges.empty()) throw std::invalid_argument("ClusterStructure: no edges");
  std::sort(edges.begin(), edges.end(),
            [](auto& a, auto& b) { return a.second < b.second; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, p] = edges[i];
    if (a < 1) throw std::invalid_argument("ClusterStructure: edge count < 1");
    if (p < 3) throw std::invalid_argument("ClusterStructure: uniformity < 3");
    if (i > 0 && edges[i - 1].second == p)
      throw std::invalid_argument("ClusterStructure: duplicate uniformity");
  }
  if (ell < 0) throw std::invalid_argument("ClusterStructure: l < 0");
  if ((degree_sum() + ell) % 2 != 0)
    throw std::invalid_argument(
        "ClusterStructure: sum a_i p_i + l must be even (structure set empty)");
}

int ClusterStructure::total_edges() const {
  int k = 0;
  for (auto& [a, p] : edges) k += a;
  return k;
}

int ClusterStructure::degree_sum() const {
  int s = 0;
  for (auto& [a, p] : edges) s += a * p;
  return s;
}

int ClusterStructure::count_at(int p) const {
  for (auto& [a, q] : edges)
    if (q == p) return a;
  return 0;
}

std::string ClusterStructure::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ',';
    os << edges[i].first << 'x' << edges[i].second;
  }
  os << ";l=" << odd_vertices;
  return os.str();
}

ClusterStructure ClusterStructure::parse(const std::string& s) {
  // Accepts "2x3;l=2", "1x4,2x5;l=0", and the "(2,3);l=2" alias.
  std::string t;
  for (char ch : s)
    if (!std::isspace((unsigned char)ch)) t.push_back(ch);
  auto semi = t.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("cluster grammar: missing ';l=L' in '" + s + "'");
  std::string head = t.substr(0, semi);
  std::string tail = t.substr(semi + 1);
  if (tail.rfind("l=", 0) != 0)
    throw std::invalid_argument("cluster grammar: expected 'l=' in '" + s + "'");
  int ell = std::stoi(tail.substr(2));

  std::vector<std::pair<int, int>> parts;
  std::istringstream hs(head);
  std::string item;
  while (std::getline(hs, item, ',')) {
    if (item.empty()) continue;
    int a = 0, p = 0;
    if (item.front() == '(') {
      // "(a" followed by next item "p)" was split on ','; stitch back.
      std::string second;
      if (!std::getline(hs, second, ','))
        throw std::invalid_argument("cluster grammar: bad tuple in '" + s + "'");
      a = std::stoi(item.substr(1));
      p = std::stoi(second);
    } else {
      auto xpos = item.find('x');
      if (xpos == std::string::npos)
        throw std::invalid_argument("cluster grammar: expected 'axp' in '" + s + "'");
      a = std::stoi(item.substr(0, xpos));
      p = std::stoi(item.substr(xpos + 1));
    }
    parts.emplace_back(a, p);
  }
  return ClusterStructure(parts, ell);
}

std::string IntersectionProfile::to_string() const {
  std::ostringstream os;
  os << '(' << x << ',' << y << ',' << z << ')';
  return os.str();
}

std::vector<IntersectionProfile> intersection_profiles(int p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("intersection_profiles: p must be odd and >= 3");
  std::vector<IntersectionProfile> out;
  for (int x = p; x >= 1; --x)
    for (int y = std::min(x, p - x); y >= 1; --y) {
      int z = p - x - y;
      if (z < 0 || z > y) continue;
      out.push_back({x, y, z});
    }
  std::sort(out.begin(), out.end(),
            [](auto& a, auto& b) { return std::tie(b.x, b.y, b.z) < std::tie(a.x, a.y, a.z); });
  return out;
}

namespace {

// All p-subsets of {0..N-1} as bitmasks, lexicographic.
std::vector<std::uint64_t> edge_masks(int N, int p) {
  std::vector<std::uint64_t> out;
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::uint64_t m = 0;
    for (int v : idx) m |= 1ull << v;
    out.push_back(m);
    int i = p - 1;
    while (i >= 0 && idx[i] == N - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

struct WalkState {
  std::uint64_t parity = 0;  // odd-degree vertices
  std::uint64_t seen1 = 0;   // degree >= 1
  std::uint64_t seen2 = 0;   // degree >= 2
  std::uint64_t over2 = 0;   // degree >= 3
};

inline WalkState add_edge(const WalkState& s, std::uint64_t m) {
  WalkState t;
  t.parity = s.parity ^ m;
  t.over2 = s.over2 | (s.seen2 & m);
  t.seen2 = s.seen2 | (s.seen1 & m);
  t.seen1 = s.seen1 | m;
  return t;
}

void check_budget(int N, const ClusterStructure& c, double budget) {
  int total_m = 0;
  for (auto& [a, p] : c.edges) total_m += int(binom_d(N, p));
  double combos = binom_d(total_m, c.total_edges());
  if (combos > budget)
    throw BudgetError("cluster enumeration over budget", combos, budget);
}

// Walks all combinations of a_i distinct edges per uniformity; calls emit for
// every combination whose odd-vertex count matches.
void walk_clusters(
    int N, const ClusterStructure& c, double budget,
    const std::function<void(const std::vector<std::pair<std::uint64_t, int>>&,
                             bool canonical)>& emit) {
  check_budget(N, c, budget);
  std::vector<std::vector<std::uint64_t>> lists;
  for (auto& [a, p] : c.edges) lists.push_back(edge_masks(N, p));

  std::vector<std::pair<std::uint64_t, int>> chosen;
  const int ell = c.odd_vertices;

  // Recursion over (uniformity group, position within group).
  std::function<void(std::size_t, int, int, const WalkState&)> rec =
      [&](std::size_t g, int need, int from, const WalkState& st) {
        if (need == 0) {
          if (g + 1 < lists.size()) {
            rec(g + 1, c.edges[g + 1].first, 0, st);
          } else {
            if (std::popcount(st.parity) == ell)
              emit(chosen, st.over2 == 0);
          }
          return;
        }
        const auto& L = lists[g];
        int limit = int(L.size()) - need;
        for (int i = from; i <= limit; ++i) {
          chosen.emplace_back(L[i], c.edges[g].second);
          rec(g, need - 1, i + 1, add_edge(st, L[i]));
          chosen.pop_back();
        }
      };
  rec(0, c.edges[0].first, 0, WalkState{});
}

BigInt falling_factorial(int N, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= (N - i);
  return r;
}

// Number of distinct orderings of the 3 profile values.
int profile_multiplicity(const IntersectionProfile& d) {
  if (d.x == d.y && d.y == d.z) return 1;
  if (d.x == d.y || d.y == d.z || d.x == d.z) return 3;
  return 6;
}

}  // namespace

ClusterCounts count_clusters(int N, const ClusterStructure& c, double budget) {
  ClusterCounts out{0, 0};
  walk_clusters(N, c, budget,
                [&](const std::vector<std::pair<std::uint64_t, int>>&, bool canon) {
                  ++out.total;
                  if (canon) ++out.canonical;
                });
  return out;
}

std::vector<SubHypergraph> enumerate_clusters(int N, const ClusterStructure& c,
                                              double budget) {
  std::vector<SubHypergraph> out;
  const std::size_t cap = 5'000'000;
  walk_clusters(N, c, budget,
                [&](const std::vector<std::pair<std::uint64_t, int>>& edges, bool) {
                  if (out.size() >= cap)
                    throw BudgetError("enumerate_clusters result too large",
                                      double(out.size() + 1), double(cap));
                  out.push_back({edges});
                });
  return out;
}

ProfileCensus profile_census(int N, int p, double budget) {
  ProfileCensus pc;
  pc.mixed = 0;
  pc.canonical_total = 0;
  pc.noncanonical = 0;
  ClusterStructure c = ClusterStructure::pure(4, p, 0);
  walk_clusters(N, c, budget,
                [&](const std::vector<std::pair<std::uint64_t, int>>& edges,
                    bool canon) {
                  if (!canon) {
                    ++pc.noncanonical;
                    return;
                  }
                  ++pc.canonical_total;
                  // Per-edge sorted intersection profile with the other three.
                  IntersectionProfile first{};
                  bool uniform = true;
                  for (int i = 0; i < 4 && uniform; ++i) {
                    int s[3];
                    int n = 0;
                    for (int j = 0; j < 4; ++j)
                      if (j != i)
                        s[n++] = std::popcount(edges[i].first & edges[j].first);
                    std::sort(s, s + 3, std::greater<int>());
                    IntersectionProfile pr{s[0], s[1], s[2]};
                    if (i == 0)
                      first = pr;
                    else if (!(pr == first))
                      uniform = false;
                  }
                  if (uniform)
                    pc.counts[first] += 1;
                  else
                    pc.mixed += 1;
                });
  return pc;
}

bool has_closed_form(const ClusterStructure& c) {
  int ell = c.odd_vertices;
  if (c.edges.size() == 1) {
    auto [a, p] = c.edges[0];
    if (a == 1 && ell == p) return true;
    if (a == 2 && ell == 2) return true;
    if (a == 3 && p % 2 == 0 && ell == 0) return true;
    if (a == 3 && p % 2 == 1 && ell == 1) return true;
    if (a == 4 && ell == 0) return true;
    return false;
  }
  if (c.edges.size() == 2) {
    auto [a1, p1] = c.edges[0];
    auto [a2, p2] = c.edges[1];
    // single even edge plus a pair of edges of the other uniformity
    if (ell == 0) {
      if (a1 == 2 && a2 == 1 && p2 % 2 == 0 && p2 <= 2 * p1) return true;
      if (a1 == 1 && a2 == 2 && p1 % 2 == 0 && p1 <= 2 * p2) return true;
    }
    if (ell == 1 && a1 == 1 && a2 == 1 && std::abs(p1 - p2) == 1) return true;
    return false;
  }
  return false;
}

BigInt closed_form_count(int N, const ClusterStructure& c) {
  if (!has_closed_form(c))
    throw std::invalid_argument("closed_form_count: unsupported template " +
                                c.to_string());
  int ell = c.odd_vertices;
  if (c.edges.size() == 1) {
    auto [a, p] = c.edges[0];
    if (a == 1) return binom_big(N, p);
    if (a == 2) {
      // shared block of p-1 vertices plus one private vertex per edge
      return binom_big(N, p + 1) * binom_big(p + 1, 2);
    }
    if (a == 3 && p % 2 == 0) {
      // three pair-blocks of size p/2
      if (N < 3 * p / 2) return 0;
      return falling_factorial(N, 3 * p / 2) /
             (BigInt(6) * factorial_big(p / 2) * factorial_big(p / 2) *
              factorial_big(p / 2));
    }
    if (a == 3 && p % 2 == 1) {
      // odd vertex in one edge; blocks (p-1)/2, (p-1)/2, (p+1)/2
      int t = (3 * p + 1) / 2;
      if (N < t) return 0;
      return falling_factorial(N, t) /
             (BigInt(2) * factorial_big((p - 1) / 2) * factorial_big((p - 1) / 2) *
              factorial_big((p + 1) / 2));
    }
    // a == 4, l == 0: sum over intersection profiles of the pairing template
    BigInt total = 0;
    for (int x = p - 1; x >= 1; --x)
      for (int y = std::min(x, p - x); y >= 1; --y) {
        int z = p - x - y;
        if (z < 0 || z > y) continue;
        total += closed_form_count_profile(N, p, {x, y, z});
      }
    return total;
  }
  // mixed templates
  auto [a1, p1] = c.edges[0];
  auto [a2, p2] = c.edges[1];
  if (ell == 0) {
    int pe = (a1 == 1) ? p1 : p2;  // the single even edge
    int po = (a1 == 1) ? p2 : p1;  // the paired uniformity
    int t = po + pe / 2;
    if (N < t) return 0;
    return falling_factorial(N, t) /
           (BigInt(2) * factorial_big(pe / 2) * factorial_big(pe / 2) *
            factorial_big(po - pe / 2));
  }
  // (1_pe, 1_po, 1): containment pair, larger edge = smaller plus one vertex
  int big = std::max(p1, p2);
  return binom_big(N, big) * big;
}

BigInt closed_form_count_profile(int N, int p, const IntersectionProfile& d) {
  if (d.x + d.y + d.z != p || d.y <= 0 || d.x >= p)
    throw std::invalid_argument("closed_form_count_profile: bad profile");
  if (N < 2 * p) return 0;
  BigInt denom = BigInt(24);
  denom *= factorial_big(d.x) * factorial_big(d.x);
  denom *= factorial_big(d.y) * factorial_big(d.y);
  denom *= factorial_big(d.z) * factorial_big(d.z);
  return BigInt(profile_multiplicity(d)) * falling_factorial(N, 2 * p) / denom;
}

bool canonical_feasible(const ClusterStructure& c) {
  const int ell = c.odd_vertices;
  std::vector<int> u;
  for (auto& [a, p] : c.edges)
    for (int i = 0; i < a; ++i) u.push_back(p);
  const int k = int(u.size());
  int usum = std::accumulate(u.begin(), u.end(), 0);
  if ((usum + ell) % 2 != 0) return false;
  if (ell > usum) return false;

  // Assign b_i odd (degree-1) vertices to edge i; the remaining degrees
  // d_i = u_i - b_i must form a loopless multigraph on the k edges in which
  // no same-uniformity pair is forced to share all its vertices.
  std::vector<int> b(k, 0);
  std::function<bool(int, int)> try_assign = [&](int i, int left) -> bool {
    if (i == k) {
      if (left != 0) return false;
      std::vector<int> d(k);
      for (int j = 0; j < k; ++j) d[j] = u[j] - b[j];
      std::vector<int> nz;
      for (int j = 0; j < k; ++j)
        if (d[j] > 0) nz.push_back(j);
      if (nz.empty()) return true;  // all edges pairwise disjoint
      if (nz.size() == 1) return false;
      if (nz.size() == 2) {
        int a0 = nz[0], a1 = nz[1];
        if (d[a0] != d[a1]) return false;
        if (u[a0] == u[a1] && d[a0] == u[a0]) return false;  // identical edges
        return true;
      }
      int dsum = 0, dmax = 0;
      for (int j : nz) {
        dsum += d[j];
        dmax = std::max(dmax, d[j]);
      }
      if (dsum % 2 != 0) return false;
      return dmax <= dsum - dmax;
    }
    for (int bi = 0; bi <= std::min(u[i], left); ++bi) {
      b[i] = bi;
      if (try_assign(i + 1, left - bi)) return true;
    }
    b[i] = 0;
    return false;
  };
  return try_assign(0, ell);
}

CensusResult census(int N, const ClusterStructure& c, double budget) {
  CensusResult r{c, N, 0, std::nullopt, 0, 0.0};
  ClusterCounts cc = count_clusters(N, c, budget);
  r.exact = cc.canonical;
  r.total = cc.total;
  if (has_closed_form(c)) r.closed_form = closed_form_count(N, c);
  r.scaled = double(cc.canonical) / std::pow(double(N), c.vertex_exponent());
  return r;
}

}  // namespace glasslab
