#include "glasslab/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace glasslab {

AlphaValue AlphaValue::parse(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace((unsigned char)c)) t.push_back(c);
  if (t == "inf" || t == "Inf" || t == "INF" || t == "infinity")
    return AlphaValue::inf();
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::int64_t num = std::stoll(t.substr(0, slash));
    std::int64_t den = std::stoll(t.substr(slash + 1));
    return AlphaValue::of(Rat(num, den));
  }
  auto dot = t.find('.');
  if (dot == std::string::npos) return AlphaValue::of(Rat(std::stoll(t)));
  std::string digits = t.substr(0, dot) + t.substr(dot + 1);
  int frac_len = int(t.size() - dot - 1);
  std::int64_t den = 1;
  for (int i = 0; i < frac_len; ++i) den *= 10;
  return AlphaValue::of(Rat(std::stoll(digits), den));
}

double AlphaValue::as_double() const {
  if (infinite) return std::numeric_limits<double>::infinity();
  return boost::rational_cast<double>(value);
}

std::string AlphaValue::to_string() const {
  if (infinite) return "inf";
  std::ostringstream os;
  if (value.denominator() == 1)
    os << value.numerator();
  else
    os << value.numerator() << '/' << value.denominator();
  return os.str();
}

double VarianceExponent::as_double() const {
  if (neg_infinite) return -std::numeric_limits<double>::infinity();
  return boost::rational_cast<double>(value);
}

bool VarianceExponent::operator<(const VarianceExponent& o) const {
  if (neg_infinite) return !o.neg_infinite;
  if (o.neg_infinite) return false;
  return value < o.value;
}

VarianceExponent variance_exponent(const ClusterStructure& c, AlphaValue alpha) {
  const int ell = c.odd_vertices;
  if (alpha.infinite && ell > 0) return {true, Rat(0)};
  Rat x(0);
  for (auto& [a, p] : c.edges) x -= Rat(a) * Rat(p - 1);
  x += Rat(c.degree_sum() + ell, 2);
  if (ell > 0) x -= Rat(2) * Rat(ell) * alpha.value;
  return {false, x};
}

std::vector<ClusterStructure> candidate_set(const MixtureSpec& spec) {
  if (spec.has_p2())
    throw std::invalid_argument(
        "candidate_set: theta_2 > 0 is outside this classifier's scope");
  std::vector<int> unis;
  if (spec.p_even()) unis.push_back(*spec.p_even());
  if (spec.p_odd()) unis.push_back(*spec.p_odd());
  std::sort(unis.begin(), unis.end());
  if (unis.empty())
    throw std::invalid_argument("candidate_set: no effective uniformity >= 3");

  std::vector<ClusterStructure> out;
  auto push_if_ok = [&](const std::vector<std::pair<int, int>>& e, int ell) {
    int dsum = 0;
    for (auto& [a, p] : e) dsum += a * p;
    if ((dsum + ell) % 2 != 0) return;
    ClusterStructure c(e, ell);
    if (canonical_feasible(c)) out.push_back(c);
  };

  if (unis.size() == 1) {
    int p = unis[0];
    for (int a = 1; a <= 4; ++a)
      for (int ell = 0; ell <= a * p; ++ell) push_if_ok({{a, p}}, ell);
  } else {
    int pa = unis[0], pb = unis[1];
    for (int k = 1; k <= 4; ++k)
      for (int a = 0; a <= k; ++a) {
        int b = k - a;
        std::vector<std::pair<int, int>> e;
        if (a > 0) e.emplace_back(a, pa);
        if (b > 0) e.emplace_back(b, pb);
        for (int ell = 0; ell <= a * pa + b * pb; ++ell) push_if_ok(e, ell);
      }
  }
  return out;
}

namespace {

Rat best_zero_field_exponent(const std::vector<ClusterStructure>& cand) {
  bool found = false;
  Rat best(0);
  for (const auto& c : cand) {
    if (c.odd_vertices != 0) continue;
    Rat x = variance_exponent(c, AlphaValue::inf()).value;
    if (!found || x > best) {
      best = x;
      found = true;
    }
  }
  if (!found)
    throw std::logic_error("no zero-field candidate structure exists");
  return best;
}

}  // namespace

AlphaCritical alpha_critical(const MixtureSpec& spec) {
  auto cand = candidate_set(spec);
  Rat x0 = best_zero_field_exponent(cand);

  // First crossover while alpha decreases from infinity: for each candidate
  // with l > 0, X(alpha) = base - 2 l alpha meets x0 at
  // alpha = (base - x0) / (2 l).
  bool found = false;
  Rat ac(0);
  for (const auto& c : cand) {
    int ell = c.odd_vertices;
    if (ell == 0) continue;
    Rat base = variance_exponent(c, AlphaValue::of(Rat(0))).value;
    Rat tie = (base - x0) / (Rat(2) * Rat(ell));
    if (!found || tie > ac) {
      ac = tie;
      found = true;
    }
  }
  if (!found) throw std::logic_error("no odd-vertex candidate structure exists");

  AlphaCritical r;
  r.value = ac;

  if (spec.p_even() && spec.p_odd()) {
    int pe = *spec.p_even(), po = *spec.p_odd();
    if (pe < po - 1) {
      r.table_value = Rat(pe, 8);
      r.fired_case = "pe<po-1";
    } else if (pe == po - 1) {
      r.table_value = Rat(pe - 2, 4);
      r.fired_case = "pe=po-1";
    } else if (pe == po + 1) {
      // Published case formula pe/8; inconsistent with the exponent
      // arithmetic, which the crossover value above follows.
      r.table_value = Rat(pe, 8);
      r.fired_case = "pe=po+1";
    } else if (pe < 2 * (po - 1)) {
      r.table_value = Rat(pe, 8);
      r.fired_case = "po+1<pe<2(po-1)";
    } else {
      r.table_value = Rat(po - 1, 4);
      r.fired_case = pe == 2 * (po - 1) ? "pe=2(po-1)" : "pe>=2po";
    }
  } else if (spec.p_even()) {
    r.table_value = Rat(*spec.p_even(), 8);
    r.fired_case = "pure even";
  } else {
    r.table_value = Rat(*spec.p_odd() - 1, 4);
    r.fired_case = "pure odd";
  }
  r.consistent = (r.value == r.table_value);
  return r;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::subcritical_R1: return "subcritical-R1";
    case Regime::unified_I_R2: return "unified-I-R2";
    case Regime::unified_II_R3: return "unified-II-R3";
    case Regime::threshold_point: return "threshold-point";
  }
  return "?";
}

RegimeReport classify(const MixtureSpec& spec, AlphaValue alpha) {
  if (!alpha.infinite && alpha.value < Rat(1, 4))
    throw std::invalid_argument("classify: alpha must be >= 1/4");
  RegimeReport rep;
  rep.alpha = alpha;
  rep.alpha_c = alpha_critical(spec).value;

  auto cand = candidate_set(spec);
  VarianceExponent best{true, Rat(0)};
  for (const auto& c : cand) {
    VarianceExponent x = variance_exponent(c, alpha);
    rep.exponent_table.emplace_back(c, x);
    if (best < x) best = x;
  }
  for (auto& [c, x] : rep.exponent_table)
    if (x == best) rep.dominant.push_back(c);
  rep.gamma = -best.value;

  if (alpha.infinite || alpha.value > rep.alpha_c)
    rep.regime = Regime::subcritical_R1;
  else if (alpha.value == rep.alpha_c || alpha.value == Rat(1, 2))
    rep.regime = Regime::threshold_point;
  else if (alpha.value > Rat(1, 2))
    rep.regime = Regime::unified_I_R2;
  else
    rep.regime = Regime::unified_II_R3;
  return rep;
}

namespace {

ClusterStructure cs(std::vector<std::pair<int, int>> e, int ell) {
  return ClusterStructure(std::move(e), ell);
}

Rat gamma_of(const std::vector<ClusterStructure>& cls, AlphaValue a) {
  // All clusters in a table row tie; take the common -X and check the tie.
  Rat g = -variance_exponent(cls[0], a).value;
  for (const auto& c : cls) {
    Rat gi = -variance_exponent(c, a).value;
    if (gi != g)
      throw std::logic_error("table row clusters do not tie at the given alpha");
  }
  return g;
}

}  // namespace

std::vector<TableRow> pure_table_rows(int p) {
  if (p < 3) throw std::invalid_argument("pure_table_rows: p >= 3");
  const bool even = (p % 2 == 0);
  const Rat ac = even ? Rat(p, 8) : Rat(p - 1, 4);
  std::vector<TableRow> rows;

  std::vector<ClusterStructure> h0 =
      even ? std::vector<ClusterStructure>{cs({{3, p}}, 0)}
           : std::vector<ClusterStructure>{cs({{4, p}}, 0)};
  Rat g1 = even ? Rat(3 * (p - 2), 2) : Rat(2 * (p - 2));
  rows.push_back({"R1", AlphaValue::inf(), g1, h0});
  rows.push_back({"R1", AlphaValue::of(ac + Rat(1)), g1, h0});

  std::vector<ClusterStructure> at_ac = h0;
  at_ac.push_back(cs({{2, p}}, 2));
  if (!even) at_ac.push_back(cs({{3, p}}, 1));
  std::vector<ClusterStructure> at_half = {cs({{2, p}}, 2), cs({{1, p}}, p)};

  if (ac == Rat(1, 2)) {
    // Thresholds collide (p = 3 or 4); the dominant set is the union.
    std::vector<ClusterStructure> merged = at_ac;
    for (auto& c : at_half)
      if (std::find(merged.begin(), merged.end(), c) == merged.end())
        merged.push_back(c);
    rows.push_back({"alpha_c", AlphaValue::of(ac), Rat(p - 1), merged});
  } else {
    rows.push_back({"alpha_c", AlphaValue::of(ac), g1, at_ac});
    AlphaValue mid = AlphaValue::of((ac + Rat(1, 2)) / Rat(2));
    rows.push_back({"R2", mid, Rat(p - 3) + Rat(4) * mid.value,
                    {cs({{2, p}}, 2)}});
    rows.push_back({"half", AlphaValue::of(Rat(1, 2)), Rat(p - 1), at_half});
  }

  for (Rat a : {Rat(3, 8), Rat(1, 4)})
    rows.push_back({"R3", AlphaValue::of(a), Rat(2 * p) * a - Rat(1),
                    {cs({{1, p}}, p)}});
  return rows;
}

std::vector<TableRow> mixed_table_rows(int p_e, int p_o) {
  if (p_e < 4 || p_e % 2 != 0 || p_o < 3 || p_o % 2 != 1)
    throw std::invalid_argument("mixed_table_rows: need even p_e >= 4, odd p_o >= 3");
  auto e3 = cs({{3, p_e}}, 0);
  auto e2l2 = cs({{2, p_e}}, 2);
  auto e1 = cs({{1, p_e}}, p_e);
  auto o4 = cs({{4, p_o}}, 0);
  auto o2l2 = cs({{2, p_o}}, 2);
  auto o3l1 = cs({{3, p_o}}, 1);
  auto o1 = cs({{1, p_o}}, p_o);
  auto e1o2 = cs({{1, p_e}, {2, p_o}}, 0);
  auto e1o1l1 = cs({{1, p_e}, {1, p_o}}, 1);

  std::vector<ClusterStructure> h0, at_ac, r2, at_half, r3;
  Rat ac;
  // Relation classes; (4,3) satisfies both pe = po+1 and pe = 2(po-1) and
  // takes the union of the two rows.
  const bool case_b = (p_e == p_o - 1);
  const bool case_c = (p_e == p_o + 1);
  const bool case_e = (p_e == 2 * (p_o - 1));
  if (p_e < p_o) {
    h0 = {e3};
    ac = case_b ? Rat(p_e - 2, 4) : Rat(p_e, 8);
    at_ac = {e3};
    if (case_b) {
      at_ac.push_back(e1o1l1);
      r2 = {e1o1l1};
      at_half = {e1o1l1, e1};
    } else {
      at_ac.push_back(e2l2);
      r2 = {e2l2};
      at_half = {e2l2, e1};
    }
    r3 = {e1};
  } else if (p_e >= 2 * p_o) {
    h0 = {o4};
    ac = Rat(p_o - 1, 4);
    at_ac = {o4, o2l2, o3l1};
    r2 = {o2l2};
    at_half = {o2l2, o1};
    r3 = {o1};
  } else {
    // p_o < p_e < 2 p_o
    h0 = {e1o2};
    if (case_e) h0.push_back(o4);
    if (case_c) {
      ac = Rat(p_e - 2, 4);  // exponent-consistent crossover
      at_ac = h0;
      at_ac.push_back(e1o1l1);
      r2 = {e1o1l1};
      at_half = {e1o1l1, o1};
    } else {
      ac = case_e ? Rat(p_o - 1, 4) : Rat(p_e, 8);
      at_ac = h0;
      at_ac.push_back(o2l2);
      if (case_e) at_ac.push_back(o3l1);
      r2 = {o2l2};
      at_half = {o2l2, o1};
    }
    if (case_c && case_e) {
      // (4,3): both rows apply
      for (auto& c : {o2l2, o3l1})
        if (std::find(at_ac.begin(), at_ac.end(), c) == at_ac.end())
          at_ac.push_back(c);
    }
    r3 = {o1};
  }

  std::vector<TableRow> rows;
  Rat g1 = gamma_of(h0, AlphaValue::inf());
  rows.push_back({"R1", AlphaValue::inf(), g1, h0});
  rows.push_back({"R1", AlphaValue::of(ac + Rat(1)), g1, h0});

  if (ac == Rat(1, 2)) {
    std::vector<ClusterStructure> merged = at_ac;
    for (auto& c : at_half)
      if (std::find(merged.begin(), merged.end(), c) == merged.end())
        merged.push_back(c);
    rows.push_back({"alpha_c", AlphaValue::of(ac),
                    gamma_of(merged, AlphaValue::of(ac)), merged});
  } else {
    rows.push_back({"alpha_c", AlphaValue::of(ac),
                    gamma_of(at_ac, AlphaValue::of(ac)), at_ac});
    AlphaValue mid = AlphaValue::of((ac + Rat(1, 2)) / Rat(2));
    rows.push_back({"R2", mid, gamma_of(r2, mid), r2});
    rows.push_back({"half", AlphaValue::of(Rat(1, 2)),
                    gamma_of(at_half, AlphaValue::of(Rat(1, 2))), at_half});
  }
  for (Rat a : {Rat(3, 8), Rat(1, 4)}) {
    AlphaValue av = AlphaValue::of(a);
    rows.push_back({"R3", av, gamma_of(r3, av), r3});
  }
  return rows;
}

}  // namespace glasslab
