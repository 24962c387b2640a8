#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hosm {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// A hyperedge as a set: strictly increasing, duplicate-free vertex list.
class HyperEdge {
 public:
  HyperEdge() = default;
  /// Sorts `vertices`; throws ValidationError on a repeated vertex or an empty list.
  explicit HyperEdge(std::vector<VertexId> vertices);

  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::size_t order() const noexcept { return vertices_.size(); }
  VertexId operator[](std::size_t i) const noexcept { return vertices_[i]; }

  /// True when every vertex of the sorted range is in this edge.
  bool contains(std::span<const VertexId> sorted_subset) const noexcept;

  auto operator<=>(const HyperEdge&) const = default;

 private:
  std::vector<VertexId> vertices_;
};

struct HyperEdgeHash {
  std::size_t operator()(const HyperEdge& e) const noexcept;
};

/// Vertices [0, n) plus a deduplicated edge set of mixed orders.
///
/// Edges keep first-appearance order. A per-vertex incidence index serves
/// superset queries. Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Validates ids against `vertex_count` and collapses duplicate vertex sets.
  /// `labels`, when non-empty, must have `vertex_count` entries.
  static Hypergraph from_edges(std::size_t vertex_count, std::vector<HyperEdge> edges,
                               std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::span<const HyperEdge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const EdgeIndex> incident_edges(VertexId v) const noexcept;

  /// Original label of a vertex (its dense id when no labels were recorded).
  std::string label(VertexId v) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Number of input edges dropped because their vertex set was already present.
  std::size_t duplicates_collapsed() const noexcept { return duplicates_collapsed_; }

  std::size_t max_order() const noexcept;
  double average_order() const noexcept;
  bool contains(const HyperEdge& e) const noexcept;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<HyperEdge> edges_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeIndex> incidence_;
  std::vector<std::string> labels_;
  std::size_t duplicates_collapsed_ = 0;
};

/// The order-r edges of a hypergraph over the parent's vertex range.
class UniformLayer {
 public:
  UniformLayer() = default;
  /// Throws ValidationError if an edge is not of order `r` or references a vertex >= vertex_count.
  UniformLayer(int r, std::size_t vertex_count, std::vector<HyperEdge> edges);

  int order() const noexcept { return order_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::span<const HyperEdge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  std::span<const EdgeIndex> incident_edges(VertexId v) const noexcept;

  /// Number of layer edges containing `node_set`, a set of 1..r distinct vertices.
  std::size_t hyperdegree(std::span<const VertexId> node_set) const;

 private:
  int order_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<HyperEdge> edges_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeIndex> incidence_;
};

struct LayerSplit {
  int r_max = 0;
  std::vector<UniformLayer> layers;  // layers[r - 2] holds order r
  std::size_t excluded_order_one = 0;
  std::size_t excluded_above_max = 0;

  const UniformLayer& layer(int r) const;
  std::size_t covered_edges() const noexcept;
};

/// Layers r = 2..r_max. Order-1 edges and edges above r_max are counted, not kept.
LayerSplit split_layers(const Hypergraph& graph, int r_max);

// ---------------------------------------------------------------------------
// Ingestion and serialization

/// Hyperedge-list text: one edge per line, vertex tokens (non-negative integers)
/// separated by whitespace or commas, '#' starts a comment. Vertices are relabeled
/// densely in first-appearance order.
Hypergraph parse_hyperedges(std::istream& in);
Hypergraph read_hyperedges(const std::filesystem::path& path);

struct BensonDataset {
  Hypergraph graph;
  std::size_t simplex_count = 0;    // raw simplices before dedup
  std::size_t timestamp_count = 0;  // lines in the times stream, 0 when absent
};

/// Three-stream simplicial format: `nverts` holds one count k_i per simplex and
/// `simplices` the concatenated vertex ids. `times` is read and otherwise ignored.
BensonDataset parse_benson(std::istream& nverts, std::istream& simplices,
                           std::istream* times = nullptr);

/// Accepts a directory containing `<name>-nverts.txt` / `<name>-simplices.txt`
/// (name = directory name) or the common prefix `<dir>/<name>`.
BensonDataset read_benson(const std::filesystem::path& dir_or_prefix);

/// True when `path` resolves to a three-file dataset rather than a hyperedge list.
bool looks_like_benson(const std::filesystem::path& path);

/// Original labels, numerically sorted within a line, lines sorted lexicographically.
/// Independent of dense-id assignment, so parse -> write is a fixed point.
void write_canonical(const Hypergraph& graph, std::ostream& out);
std::string to_canonical_string(const Hypergraph& graph);

}  // namespace hosm
