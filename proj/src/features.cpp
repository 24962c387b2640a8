#include "hosm/features.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "hosm/errors.hpp"
#include "hosm/parallel.hpp"
#include "hosm/swalk.hpp"

namespace hosm {

std::string FeatureKey::name() const {
  return "r" + std::to_string(r) + "s" + std::to_string(s) + "m" + std::to_string(l);
}

FeatureSchema::FeatureSchema(int r_max, int l_min, int l_max)
    : r_max_(r_max), l_min_(l_min), l_max_(l_max) {
  if (r_max < 2) throw DomainError("feature schema needs r_max >= 2");
  if (l_min < 1 || l_max < l_min) throw DomainError("feature schema needs 1 <= l_min <= l_max");
  for (int r = 2; r <= r_max; ++r) {
    for (int s = 1; s <= r - 1; ++s) {
      pairs_.emplace_back(r, s);
      for (int l = l_min; l <= l_max; ++l) keys_.push_back({r, s, l});
    }
  }
}

double FeatureVector::value(int r, int s, int l) const {
  const auto keys = schema.keys();
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (keys[i].r == r && keys[i].s == s && keys[i].l == l) return values[i];
  throw DomainError("feature key not in schema");
}

FeatureVector extract_features(const Hypergraph& graph, const FeatureSchema& schema,
                               const std::string& graph_id, std::optional<std::string> label,
                               ExtractOptions options) {
  FeatureVector fv{graph_id, std::move(label), schema, {}, {}};
  fv.values.assign(schema.size(), 0.0);
  fv.present.assign(schema.pairs().size(), false);
  const auto split = split_layers(graph, schema.r_max());
  const int per_pair = schema.l_max() - schema.l_min() + 1;

  std::size_t pair_index = 0;
  for (const auto& [r, s] : schema.pairs()) {
    const auto& layer = split.layer(r);
    if (!layer.empty()) {
      const auto mode = options.force_ordered ? ExpansionMode::ordered : default_mode(r, s);
      const auto g = expand(layer, s, mode);
      const auto m = compute_moments(g, schema.l_max(), options.route);
      if (!m.absent) {
        fv.present[pair_index] = true;
        for (int k = 0; k < per_pair; ++k)
          fv.values[pair_index * static_cast<std::size_t>(per_pair) + static_cast<std::size_t>(k)] =
              m.at(schema.l_min() + k);
      }
    }
    ++pair_index;
  }
  return fv;
}

namespace {

void sort_by_id(std::vector<FeatureVector>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FeatureVector& a, const FeatureVector& b) { return a.graph_id < b.graph_id; });
}

}  // namespace

std::vector<FeatureVector> extract_features_many(std::span<const FeatureJob> jobs,
                                                 const FeatureSchema& schema, ExtractOptions options) {
  std::vector<FeatureVector> out(jobs.size(), FeatureVector{{}, {}, schema, {}, {}});
  parallel_for(jobs.size(), [&](std::size_t i) {
    out[i] = extract_features(*jobs[i].graph, schema, jobs[i].graph_id, jobs[i].label, options);
  });
  sort_by_id(out);
  return out;
}

namespace serial {
std::vector<FeatureVector> extract_features_many(std::span<const FeatureJob> jobs,
                                                 const FeatureSchema& schema, ExtractOptions options) {
  std::vector<FeatureVector> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs)
    out.push_back(extract_features(*job.graph, schema, job.graph_id, job.label, options));
  sort_by_id(out);
  return out;
}
}  // namespace serial

std::vector<DyadicEdge> downgrade(const Hypergraph& graph) {
  std::vector<DyadicEdge> out;
  for (const auto& e : graph.edges()) {
    const auto vs = e.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) out.emplace_back(vs[i], vs[j]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void write_dyadic_edges(std::span<const DyadicEdge> edges, std::ostream& out) {
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

void write_features(std::span<const FeatureVector> rows, std::ostream& out) {
  if (rows.empty()) throw DomainError("no feature vectors to write");
  const auto& schema = rows.front().schema;
  for (const auto& row : rows)
    if (!(row.schema == schema)) throw DomainError("feature vectors use different schemas");

  out << "graph_id,label";
  for (const auto& key : schema.keys()) out << ',' << key.name();
  for (const auto& [r, s] : schema.pairs()) out << ",has_r" << r << 's' << s;
  out << '\n';

  char buf[64];
  for (const auto& row : rows) {
    out << row.graph_id << ',' << row.label.value_or("");
    for (double v : row.values) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out << ',' << buf;
    }
    for (bool p : row.present) out << ',' << (p ? 1 : 0);
    out << '\n';
  }
}

void write_features(std::span<const FeatureVector> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write_features(rows, out);
}

}  // namespace hosm
