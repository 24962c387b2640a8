#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hosm/hypercore.hpp"
#include "hosm/spectra.hpp"
#include "hosm/swalk.hpp"

namespace hosm {

/// Weight-proportional averages over unit-edge instances (an edge of weight k counts k times).
inline constexpr const char* kExpectationConvention = "unit-instance weight-proportional";

struct JointDegreeStats {
  double edge_pair_mean = 0.0;  // E_(i,j) 1 / (D_[i] D_[j])
  double mean_strength = 0.0;   // E(d_i), ordered-expansion units
  double unit_edges = 0.0;      // sum of weights over undirected edges of the given graph
  bool defined = false;
};

/// Requires 1 <= s <= r/2 and a graph expanded from (layer, s) in either mode; the
/// quotient gives the same averages because every ordering carries the same weight.
JointDegreeStats joint_degree_stats(const UniformLayer& layer, int s, const WeightedGraph& graph);

struct TriadStats {
  std::uint64_t triangle_count = 0;      // distinct triangles of the given graph
  double weighted_triangle_count = 0.0;  // sum of min(w_hi, w_hj, w_ij), ordered-expansion units
  double mean_triads_per_node = 0.0;     // E(delta_i), ordered-expansion units
  double triad_degree_mean = 0.0;        // E 1 / (D_[h] D_[i] D_[j]) over min-weight instances
  double dyadic_degree_mean = 0.0;       // E 1 / (d_h d_i d_j), ordered-expansion units
  double weighted_return_sum = 0.0;      // sum of w w w / (d d d) over distinct triangles (given graph)
  std::uint64_t hyper_triads = 0;        // triples of layer edges, see count_hyper_triads
  std::size_t realizable_sets = 0;       // s-sets with hyperdegree >= 1
  double hyper_triad_mean = 0.0;         // E(Delta_[i]) = 3 * hyper_triads / realizable_sets
  bool has_triangles = false;
};

/// Triangle statistics of an expansion of (layer, s), plus the hypergraph triad count.
TriadStats triangle_stats(const WeightedGraph& graph, const UniformLayer& layer, int s);
/// Plain weighted graph: hyper-degree fields use D = 1.
TriadStats triangle_stats(const WeightedGraph& graph);

struct HyperTriadCount {
  std::uint64_t triads = 0;
  std::size_t realizable_sets = 0;
};

/// Unordered triples of distinct layer edges whose three pairwise intersections each have
/// exactly s vertices and are pairwise disjoint. Such a triple closes a triangle on its
/// three intersection sets in G^(s).
HyperTriadCount count_hyper_triads(const UniformLayer& layer, int s);

struct BoundReport {
  std::string graph_id;
  int r = 0;
  int s = 0;
  ExpansionMode mode = ExpansionMode::set_quotient;
  std::size_t tuple_nodes = 0;  // |V_G| counted as ordered tuples
  std::size_t layer_edges = 0;  // |E_r|
  std::size_t vertices = 0;     // |V|
  bool skipped = false;
  std::string skip_reason;
  bool has_m2 = false;
  bool has_m3 = false;

  double m2 = 0.0;
  JointDegreeStats joint;
  double m2_lower = 0.0;
  double slack_m2_lower = 0.0;
  double m2_identity_half = 0.0;  // prefactor C(r,s)|E_r| / (2 C(r-s,s) |V_G|)
  double m2_identity_unit = 0.0;  // the same without the factor 2
  double m2_ratio_half = 0.0;
  double m2_ratio_unit = 0.0;

  double m3 = 0.0;
  TriadStats triads;
  double m3_triad_bound = 0.0;
  double slack_m3_triad = 0.0;
  double m3_count_bound = 0.0;
  double slack_m3_count = 0.0;
  double m3_bound_sum = 0.0;  // m3_triad_bound + m3_count_bound
  double m3_bound_ratio = 0.0;
  double m3_identity = 0.0;  // 2 E(delta_i) E(1 / (d_h d_i d_j))
  double m3_identity_ratio = 0.0;
};

struct BoundOptions {
  bool m2 = true;
  bool m3 = true;
  /// Mode used for the ground-truth moments and statistics; defaults to the quotient.
  bool force_ordered = false;
};

/// Moment identities and bounds for one (layer, s), 1 <= s <= r/2. m2 and m3 always come from the
/// trace route; nothing is asserted here. An empty layer yields a skipped report.
BoundReport bound_report(const UniformLayer& layer, int s, const std::string& graph_id = {},
                         BoundOptions options = {});
BoundReport m2_report(const UniformLayer& layer, int s, const std::string& graph_id = {});
BoundReport m3_report(const UniformLayer& layer, int s, const std::string& graph_id = {});

/// One report per (r, s) with 2 <= r <= r_max and 1 <= s <= r/2.
std::vector<BoundReport> bound_reports(const Hypergraph& graph, const std::string& graph_id,
                                       int r_max = 5);

struct M2IdentityCalibration {
  std::string winner;  // "unit", "half" or "bound_only"
  std::size_t instances = 0;
  std::size_t unit_in_band = 0;
  std::size_t half_in_band = 0;
  double band_low = 0.99;
  double band_high = 1.01;
  double unit_ratio_min = 0.0, unit_ratio_max = 0.0;
  double half_ratio_min = 0.0, half_ratio_max = 0.0;
};

/// A convention wins when its identity ratio m2 / rhs lies in the band on every
/// non-skipped report and the other convention's does not.
M2IdentityCalibration calibrate_m2_identity(std::span<const BoundReport> reports);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const M2IdentityCalibration& calibration);
/// Columns: graph_id,r,s,m2,m2_lower,m3,m3_triad_bound,m3_count_bound
void write_bounds_csv(std::span<const BoundReport> reports, std::ostream& out);

}  // namespace hosm
