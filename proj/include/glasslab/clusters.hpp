#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glasslab/moment_oracle.hpp"

namespace glasslab {

// Cluster structure c = ((a_1,p_1),...,(a_t,p_t), l): a_i hyperedges of
// uniformity p_i (distinct p_i) and l odd-degree vertices.
struct ClusterStructure {
  std::vector<std::pair<int, int>> edges;  // (count a_i >= 1, uniformity p_i >= 3)
  int odd_vertices = 0;

  ClusterStructure(std::vector<std::pair<int, int>> e, int ell);
  static ClusterStructure pure(int a, int p, int ell) {
    return ClusterStructure({{a, p}}, ell);
  }

  int total_edges() const;   // k = sum a_i
  int degree_sum() const;    // sum a_i p_i
  int vertex_exponent() const { return (degree_sum() + odd_vertices) / 2; }
  int count_at(int p) const;  // a_i for uniformity p (0 if absent)

  bool operator==(const ClusterStructure& o) const {
    return edges == o.edges && odd_vertices == o.odd_vertices;
  }
  bool operator<(const ClusterStructure& o) const {
    return std::tie(edges, odd_vertices) < std::tie(o.edges, o.odd_vertices);
  }

  // Mini-grammar "axp[,axp...];l=L", e.g. "2x3;l=2" or "1x4,2x5;l=0".
  // "(2,3);l=2" is accepted as an alias.
  std::string to_string() const;
  static ClusterStructure parse(const std::string& s);
};

struct IntersectionProfile {
  int x, y, z;
  bool operator==(const IntersectionProfile& o) const {
    return x == o.x && y == o.y && z == o.z;
  }
  bool operator<(const IntersectionProfile& o) const {
    return std::tie(x, y, z) < std::tie(o.x, o.y, o.z);
  }
  std::string to_string() const;
};

// All (x,y,z) with x+y+z = p, x >= y >= z >= 0, y > 0, in decreasing order.
std::vector<IntersectionProfile> intersection_profiles(int p);

// One concrete sub-hypergraph; every edge is a vertex bitmask plus its
// uniformity. Emitted in lexicographic edge order.
struct SubHypergraph {
  std::vector<std::pair<std::uint64_t, int>> edges;
};

struct ClusterCounts {
  BigInt total;      // every matching sub-hypergraph
  BigInt canonical;  // those with all vertex degrees <= 2
};

// Exact enumeration over all combinations of distinct hyperedges. Budget is
// the total combination count C(sum_i N_{p_i}, k).
ClusterCounts count_clusters(int N, const ClusterStructure& c,
                             double budget = 1e8);
std::vector<SubHypergraph> enumerate_clusters(int N, const ClusterStructure& c,
                                              double budget = 1e8);

// Canonical (4,p) l=0 census split by edge intersection profile. `mixed`
// counts canonical structures whose four edges disagree on the profile
// (none are expected; reported rather than assumed).
struct ProfileCensus {
  std::map<IntersectionProfile, BigInt> counts;
  BigInt mixed;
  BigInt canonical_total;
  BigInt noncanonical;  // matching structures with some vertex degree >= 3
};
ProfileCensus profile_census(int N, int p, double budget = 1e8);

// Closed-form counts for the dominant-structure templates. Counts canonical
// structures (every even-degree vertex has degree exactly 2, every odd one
// degree 1). Throws std::invalid_argument for unsupported structures.
bool has_closed_form(const ClusterStructure& c);
BigInt closed_form_count(int N, const ClusterStructure& c);
BigInt closed_form_count_profile(int N, int p, const IntersectionProfile& d);

// Whether a simple hypergraph with this structure exists in canonical form
// (degree 2 on even vertices, degree 1 on odd ones) for large enough N.
bool canonical_feasible(const ClusterStructure& c);

struct CensusResult {
  ClusterStructure structure;
  int N;
  BigInt exact;  // canonical count from enumeration
  std::optional<BigInt> closed_form;
  BigInt total;  // including non-canonical matches
  double scaled;  // exact / N^t
};
CensusResult census(int N, const ClusterStructure& c, double budget = 1e8);

}  // namespace glasslab
