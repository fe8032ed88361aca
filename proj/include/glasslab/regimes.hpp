#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glasslab/clusters.hpp"
#include "glasslab/mixture.hpp"

namespace glasslab {

using Rat = boost::rational<std::int64_t>;

// Field exponent alpha as an exact rational, or +infinity (zero field).
struct AlphaValue {
  bool infinite = true;
  Rat value{0};

  static AlphaValue inf() { return {}; }
  static AlphaValue of(Rat r) { return {false, r}; }
  // Parses "inf" or a decimal such as "0.4" exactly.
  static AlphaValue parse(const std::string& s);
  double as_double() const;
  std::string to_string() const;
  bool operator==(const AlphaValue& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

// Variance exponent X(c) = -2 alpha l - sum a_i (p_i - 1)
//                          + (sum a_i p_i + l)/2;
// alpha = inf with l > 0 gives -infinity.
struct VarianceExponent {
  bool neg_infinite = false;
  Rat value{0};
  double as_double() const;
  bool operator<(const VarianceExponent& o) const;
  bool operator==(const VarianceExponent& o) const {
    return neg_infinite == o.neg_infinite && (neg_infinite || value == o.value);
  }
};
VarianceExponent variance_exponent(const ClusterStructure& c, AlphaValue alpha);

// All admissible dominant-candidate structures: 1..4 hyperedges drawn from
// the effective uniformities {p_e, p_o}, any parity-admissible odd-vertex
// count, filtered by canonical feasibility. Rejects theta_2 > 0.
std::vector<ClusterStructure> candidate_set(const MixtureSpec& spec);

struct AlphaCritical {
  Rat value;            // crossover alpha consistent with variance_exponent
  Rat table_value;      // the published case formula
  std::string fired_case;
  bool consistent;      // value == table_value
};
AlphaCritical alpha_critical(const MixtureSpec& spec);

enum class Regime { subcritical_R1, unified_I_R2, unified_II_R3, threshold_point };
std::string regime_name(Regime r);

struct RegimeReport {
  AlphaValue alpha;
  Rat alpha_c;
  Regime regime;
  Rat gamma;  // Var(Zhat) ~ N^{-gamma}
  std::vector<ClusterStructure> dominant;
  std::vector<std::pair<ClusterStructure, VarianceExponent>> exponent_table;
};
RegimeReport classify(const MixtureSpec& spec, AlphaValue alpha);

// Transcribed transition-table rows used for verification and CSV dumps.
struct TableRow {
  std::string regime_label;    // "R1", "alpha_c", "R2", "half", "R3"
  AlphaValue alpha;            // representative or threshold value
  Rat gamma;
  std::vector<ClusterStructure> clusters;
};
std::vector<TableRow> pure_table_rows(int p);
std::vector<TableRow> mixed_table_rows(int p_e, int p_o);

}  // namespace glasslab
