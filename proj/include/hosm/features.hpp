#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hosm/hypercore.hpp"
#include "hosm/spectra.hpp"

namespace hosm {

struct FeatureKey {
  int r = 0;
  int s = 0;
  int l = 0;
  std::string name() const;  // "r{r}s{s}m{l}"
};

/// Ordered (r, s, l) keys: r ascending, then s, then l.
class FeatureSchema {
 public:
  /// Throws DomainError unless r_max >= 2 and 1 <= l_min <= l_max.
  FeatureSchema(int r_max = 5, int l_min = 2, int l_max = 4);

  int r_max() const noexcept { return r_max_; }
  int l_min() const noexcept { return l_min_; }
  int l_max() const noexcept { return l_max_; }
  std::span<const FeatureKey> keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }
  /// (r, s) pairs in schema order; one presence flag each.
  std::span<const std::pair<int, int>> pairs() const noexcept { return pairs_; }

  bool operator==(const FeatureSchema& o) const noexcept {
    return r_max_ == o.r_max_ && l_min_ == o.l_min_ && l_max_ == o.l_max_;
  }

 private:
  int r_max_;
  int l_min_;
  int l_max_;
  std::vector<FeatureKey> keys_;
  std::vector<std::pair<int, int>> pairs_;
};

struct FeatureVector {
  std::string graph_id;
  std::optional<std::string> label;
  FeatureSchema schema;
  std::vector<double> values;  // one per schema key
  std::vector<bool> present;   // one per (r, s) pair; false means absent layer, values 0

  double value(int r, int s, int l) const;
};

struct ExtractOptions {
  bool force_ordered = false;  // otherwise the quotient wherever 2s <= r
  MomentRoute route = MomentRoute::trace;
};

/// Moments of every (r, s) expansion of the hypergraph's layers.
FeatureVector extract_features(const Hypergraph& graph, const FeatureSchema& schema,
                               const std::string& graph_id = {},
                               std::optional<std::string> label = std::nullopt,
                               ExtractOptions options = {});

struct FeatureJob {
  const Hypergraph* graph = nullptr;
  std::string graph_id;
  std::optional<std::string> label;
};

/// Extraction over many graphs on the OpenMP team; output sorted by graph id.
std::vector<FeatureVector> extract_features_many(std::span<const FeatureJob> jobs,
                                                 const FeatureSchema& schema,
                                                 ExtractOptions options = {});
namespace serial {
std::vector<FeatureVector> extract_features_many(std::span<const FeatureJob> jobs,
                                                 const FeatureSchema& schema,
                                                 ExtractOptions options = {});
}  // namespace serial

using DyadicEdge = std::pair<VertexId, VertexId>;

/// Union of all 2-subsets of every hyperedge, deduplicated, u < v, sorted.
std::vector<DyadicEdge> downgrade(const Hypergraph& graph);
void write_dyadic_edges(std::span<const DyadicEdge> edges, std::ostream& out);

/// CSV with header graph_id,label,<keys...>,has_r{r}s{s}...; values in %.12g.
/// Throws DomainError on an empty list or mixed schemas.
void write_features(std::span<const FeatureVector> rows, std::ostream& out);
void write_features(std::span<const FeatureVector> rows, const std::filesystem::path& path);

}  // namespace hosm
