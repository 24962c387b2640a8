#include "hosm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_map>

#include "hosm/combinatorics.hpp"
#include "hosm/errors.hpp"
#include "hosm/kernels.hpp"

namespace hosm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_low_regime(const UniformLayer& layer, int s) {
  if (s < 1 || 2 * s > layer.order())
    throw DomainError("bounds are defined only for 1 <= s <= r/2 (r = " +
                      std::to_string(layer.order()) + ", s = " + std::to_string(s) + ")");
}

void require_expansion_of(const UniformLayer& layer, int s, const WeightedGraph& graph) {
  const auto& p = graph.provenance();
  if (p.r != layer.order() || p.s != s)
    throw DomainError("graph is not an expansion of this (r, s)");
}

std::vector<double> hyper_degrees(const UniformLayer& layer, const WeightedGraph& graph) {
  std::vector<double> D(graph.node_count());
  for (std::uint32_t u = 0; u < graph.node_count(); ++u)
    D[u] = static_cast<double>(layer.hyperdegree(graph.tuple(u)));
  return D;
}

double ratio(double a, double b) { return b != 0.0 ? a / b : kNaN; }

std::size_t walkable_nodes(const WeightedGraph& g) {
  std::size_t n = 0;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) n += g.strength(u) > 0;
  return n;
}

TriadStats triad_stats_from(const WeightedGraph& graph, const std::vector<double>& D) {
  const auto sums = kernels::triangle_scan_omp(graph, D);
  const long double b = static_cast<long double>(graph.provenance().blowup());
  const auto n = walkable_nodes(graph);
  TriadStats t;
  t.triangle_count = sums.triangles;
  t.has_triangles = sums.triangles > 0;
  t.weighted_triangle_count = static_cast<double>(sums.min_weight_sum * b * b * b);
  t.weighted_return_sum = static_cast<double>(sums.product_over_dyadic);
  if (n > 0) t.mean_triads_per_node = static_cast<double>(3.0L * sums.min_weight_sum * b * b / static_cast<long double>(n));
  if (t.has_triangles) {
    t.triad_degree_mean = static_cast<double>(sums.min_weight_over_hyper / sums.min_weight_sum);
    t.dyadic_degree_mean = static_cast<double>(sums.min_weight_over_dyadic / sums.min_weight_sum / (b * b * b));
  }
  return t;
}

}  // namespace

JointDegreeStats joint_degree_stats(const UniformLayer& layer, int s, const WeightedGraph& graph) {
  require_low_regime(layer, s);
  require_expansion_of(layer, s, graph);
  JointDegreeStats out;
  if (graph.empty()) return out;
  const auto D = hyper_degrees(layer, graph);
  long double weighted = 0, total = 0, strength = 0;
  for (std::uint32_t u = 0; u < graph.node_count(); ++u) {
    strength += graph.strength(u);
    const auto nb = graph.neighbors(u);
    const auto ws = graph.weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] <= u) continue;
      total += ws[k];
      weighted += static_cast<long double>(ws[k]) / (static_cast<long double>(D[u]) * D[nb[k]]);
    }
  }
  out.defined = true;
  out.unit_edges = static_cast<double>(total);
  out.edge_pair_mean = static_cast<double>(weighted / total);
  out.mean_strength = static_cast<double>(strength / walkable_nodes(graph) *
                                          static_cast<long double>(graph.provenance().blowup()));
  return out;
}

HyperTriadCount count_hyper_triads(const UniformLayer& layer, int s) {
  require_low_regime(layer, s);
  const auto edges = layer.edges();
  const auto m = edges.size();
  HyperTriadCount out;

  std::set<std::vector<VertexId>> sets;
  for (const auto& e : edges) {
    for_each_combination(static_cast<int>(e.order()), s, [&](const std::vector<int>& idx) {
      std::vector<VertexId> t;
      for (int i : idx) t.push_back(e[static_cast<std::size_t>(i)]);
      sets.insert(std::move(t));
    });
  }
  out.realizable_sets = sets.size();

  // up[a]: edges b > a with |e_a n e_b| == s, with the intersection.
  std::vector<std::vector<std::pair<EdgeIndex, std::vector<VertexId>>>> up(m);
  std::unordered_map<EdgeIndex, std::uint32_t> shared;
  for (EdgeIndex a = 0; a < m; ++a) {
    shared.clear();
    for (VertexId v : edges[a].vertices())
      for (EdgeIndex b : layer.incident_edges(v))
        if (b > a) ++shared[b];
    for (const auto& [b, count] : shared) {
      if (count != static_cast<std::uint32_t>(s)) continue;
      std::vector<VertexId> inter;
      std::set_intersection(edges[a].vertices().begin(), edges[a].vertices().end(),
                            edges[b].vertices().begin(), edges[b].vertices().end(),
                            std::back_inserter(inter));
      up[a].emplace_back(b, std::move(inter));
    }
    std::sort(up[a].begin(), up[a].end());
  }

  auto lookup = [&](EdgeIndex a, EdgeIndex b) -> const std::vector<VertexId>* {
    auto it = std::lower_bound(up[a].begin(), up[a].end(), b,
                               [](const auto& entry, EdgeIndex key) { return entry.first < key; });
    return it != up[a].end() && it->first == b ? &it->second : nullptr;
  };
  auto disjoint = [](const std::vector<VertexId>& x, const std::vector<VertexId>& y) {
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return false;
      x[i] < y[j] ? ++i : ++j;
    }
    return true;
  };

  for (EdgeIndex a = 0; a < m; ++a) {
    for (std::size_t p = 0; p < up[a].size(); ++p) {
      for (std::size_t q = p + 1; q < up[a].size(); ++q) {
        const auto b = up[a][p].first;
        const auto c = up[a][q].first;
        const auto* bc = lookup(b, c);
        if (bc == nullptr) continue;
        const auto& ab = up[a][p].second;
        const auto& ac = up[a][q].second;
        if (disjoint(ab, ac) && disjoint(ab, *bc) && disjoint(ac, *bc)) ++out.triads;
      }
    }
  }
  return out;
}

TriadStats triangle_stats(const WeightedGraph& graph, const UniformLayer& layer, int s) {
  require_low_regime(layer, s);
  require_expansion_of(layer, s, graph);
  auto t = triad_stats_from(graph, hyper_degrees(layer, graph));
  const auto h = count_hyper_triads(layer, s);
  t.hyper_triads = h.triads;
  t.realizable_sets = h.realizable_sets;
  if (h.realizable_sets > 0)
    t.hyper_triad_mean = 3.0 * static_cast<double>(h.triads) / static_cast<double>(h.realizable_sets);
  return t;
}

TriadStats triangle_stats(const WeightedGraph& graph) {
  return triad_stats_from(graph, std::vector<double>(graph.node_count(), 1.0));
}

BoundReport bound_report(const UniformLayer& layer, int s, const std::string& graph_id,
                         BoundOptions options) {
  require_low_regime(layer, s);
  const int r = layer.order();
  BoundReport rep;
  rep.graph_id = graph_id;
  rep.r = r;
  rep.s = s;
  rep.mode = options.force_ordered ? ExpansionMode::ordered : default_mode(r, s);
  rep.layer_edges = layer.edge_count();
  rep.vertices = layer.vertex_count();
  if (layer.empty()) {
    rep.skipped = true;
    rep.skip_reason = "empty layer";
    return rep;
  }

  const auto graph = expand(layer, s, rep.mode);
  if (graph.empty()) {
    rep.skipped = true;
    rep.skip_reason = "empty expansion";
    return rep;
  }
  rep.tuple_nodes = walkable_nodes(graph) * graph.provenance().blowup();
  const auto moments = moments_trace(graph, 3);
  const double c = static_cast<double>(binomial(r - s, s));

  if (options.m2) {
    rep.has_m2 = true;
    rep.m2 = moments.at(2);
    rep.joint = joint_degree_stats(layer, s, graph);
    rep.m2_lower = rep.joint.edge_pair_mean / (2.0 * c);
    rep.slack_m2_lower = rep.m2 - rep.m2_lower;
    const double pref_half = static_cast<double>(binomial(r, s)) * static_cast<double>(rep.layer_edges) /
                             (2.0 * c * static_cast<double>(rep.tuple_nodes));
    rep.m2_identity_half = pref_half * rep.joint.edge_pair_mean;
    rep.m2_identity_unit = 2.0 * rep.m2_identity_half;
    rep.m2_ratio_half = ratio(rep.m2, rep.m2_identity_half);
    rep.m2_ratio_unit = ratio(rep.m2, rep.m2_identity_unit);
  }

  if (options.m3) {
    rep.has_m3 = true;
    rep.m3 = moments.at(3);
    rep.triads = triangle_stats(graph, layer, s);
    const double c3 = c * c * c;
    const double tri_mean = rep.triads.has_triangles ? rep.triads.triad_degree_mean : 0.0;
    rep.m3_triad_bound = 2.0 * rep.triads.hyper_triad_mean / c3 * tri_mean;
    rep.slack_m3_triad = rep.m3 - rep.m3_triad_bound;
    rep.m3_count_bound = 6.0 * static_cast<double>(binomial(r - s, 2)) * static_cast<double>(rep.layer_edges) /
                  static_cast<double>(rep.vertices) / c3 * tri_mean;
    rep.slack_m3_count = rep.m3 - rep.m3_count_bound;
    rep.m3_bound_sum = rep.m3_triad_bound + rep.m3_count_bound;
    rep.m3_bound_ratio = ratio(rep.m3, rep.m3_bound_sum);
    rep.m3_identity = 2.0 * rep.triads.mean_triads_per_node * rep.triads.dyadic_degree_mean;
    rep.m3_identity_ratio = ratio(rep.m3, rep.m3_identity);
  }
  return rep;
}

BoundReport m2_report(const UniformLayer& layer, int s, const std::string& graph_id) {
  return bound_report(layer, s, graph_id, BoundOptions{true, false, false});
}

BoundReport m3_report(const UniformLayer& layer, int s, const std::string& graph_id) {
  return bound_report(layer, s, graph_id, BoundOptions{false, true, false});
}

std::vector<BoundReport> bound_reports(const Hypergraph& graph, const std::string& graph_id, int r_max) {
  const auto split = split_layers(graph, r_max);
  std::vector<BoundReport> out;
  for (int r = 2; r <= r_max; ++r)
    for (int s = 1; 2 * s <= r; ++s) out.push_back(bound_report(split.layer(r), s, graph_id));
  return out;
}

M2IdentityCalibration calibrate_m2_identity(std::span<const BoundReport> reports) {
  M2IdentityCalibration cal;
  bool first = true;
  for (const auto& rep : reports) {
    if (rep.skipped || !rep.has_m2) continue;
    ++cal.instances;
    auto in_band = [&](double x) { return x >= cal.band_low && x <= cal.band_high; };
    cal.unit_in_band += in_band(rep.m2_ratio_unit);
    cal.half_in_band += in_band(rep.m2_ratio_half);
    if (first) {
      cal.unit_ratio_min = cal.unit_ratio_max = rep.m2_ratio_unit;
      cal.half_ratio_min = cal.half_ratio_max = rep.m2_ratio_half;
      first = false;
    } else {
      cal.unit_ratio_min = std::min(cal.unit_ratio_min, rep.m2_ratio_unit);
      cal.unit_ratio_max = std::max(cal.unit_ratio_max, rep.m2_ratio_unit);
      cal.half_ratio_min = std::min(cal.half_ratio_min, rep.m2_ratio_half);
      cal.half_ratio_max = std::max(cal.half_ratio_max, rep.m2_ratio_half);
    }
  }
  const bool unit_ok = cal.instances > 0 && cal.unit_in_band == cal.instances;
  const bool half_ok = cal.instances > 0 && cal.half_in_band == cal.instances;
  if (unit_ok && !half_ok) {
    cal.winner = "unit";
  } else if (half_ok && !unit_ok) {
    cal.winner = "half";
  } else {
    cal.winner = "bound_only";
  }
  return cal;
}

namespace {
nlohmann::json num(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}
}  // namespace

nlohmann::json to_json(const BoundReport& rep) {
  nlohmann::json j;
  j["graph_id"] = rep.graph_id;
  j["r"] = rep.r;
  j["s"] = rep.s;
  j["mode"] = to_string(rep.mode);
  j["convention"] = kExpectationConvention;
  j["tuple_nodes"] = rep.tuple_nodes;
  j["layer_edges"] = rep.layer_edges;
  j["vertices"] = rep.vertices;
  j["skipped"] = rep.skipped;
  if (rep.skipped) {
    j["skip_reason"] = rep.skip_reason;
    return j;
  }
  if (rep.has_m2) {
    j["m2"] = num(rep.m2);
    j["edge_pair_mean"] = num(rep.joint.edge_pair_mean);
    j["mean_strength"] = num(rep.joint.mean_strength);
    j["m2_lower"] = num(rep.m2_lower);
    j["slack_m2_lower"] = num(rep.slack_m2_lower);
    j["m2_identity_half"] = num(rep.m2_identity_half);
    j["m2_identity_unit"] = num(rep.m2_identity_unit);
    j["m2_ratio_half"] = num(rep.m2_ratio_half);
    j["m2_ratio_unit"] = num(rep.m2_ratio_unit);
  }
  if (rep.has_m3) {
    const auto& t = rep.triads;
    j["m3"] = num(rep.m3);
    j["triangles"] = t.triangle_count;
    j["weighted_triangles"] = num(t.weighted_triangle_count);
    j["mean_triads_per_node"] = num(t.mean_triads_per_node);
    j["triad_degree_mean"] = num(t.triad_degree_mean);
    j["dyadic_degree_mean"] = num(t.dyadic_degree_mean);
    j["hyper_triads"] = t.hyper_triads;
    j["realizable_sets"] = t.realizable_sets;
    j["hyper_triad_mean"] = num(t.hyper_triad_mean);
    j["m3_triad_bound"] = num(rep.m3_triad_bound);
    j["slack_m3_triad"] = num(rep.slack_m3_triad);
    j["m3_count_bound"] = num(rep.m3_count_bound);
    j["slack_m3_count"] = num(rep.slack_m3_count);
    j["m3_bound_sum"] = num(rep.m3_bound_sum);
    j["m3_bound_ratio"] = num(rep.m3_bound_ratio);
    j["m3_identity"] = num(rep.m3_identity);
    j["m3_identity_ratio"] = num(rep.m3_identity_ratio);
  }
  return j;
}

nlohmann::json to_json(const M2IdentityCalibration& cal) {
  return {{"winner", cal.winner},
          {"instances", cal.instances},
          {"unit_in_band", cal.unit_in_band},
          {"half_in_band", cal.half_in_band},
          {"band", {cal.band_low, cal.band_high}},
          {"unit_ratio_range", {num(cal.unit_ratio_min), num(cal.unit_ratio_max)}},
          {"half_ratio_range", {num(cal.half_ratio_min), num(cal.half_ratio_max)}}};
}

void write_bounds_csv(std::span<const BoundReport> reports, std::ostream& out) {
  out << "graph_id,r,s,m2,m2_lower,m3,m3_triad_bound,m3_count_bound\n";
  char buf[64];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
  };
  for (const auto& rep : reports) {
    if (rep.skipped) continue;
    out << rep.graph_id << ',' << rep.r << ',' << rep.s << ',' << fmt(rep.m2) << ','
        << fmt(rep.m2_lower) << ',' << fmt(rep.m3) << ',' << fmt(rep.m3_triad_bound) << ','
        << fmt(rep.m3_count_bound) << '\n';
  }
}

}  // namespace hosm
