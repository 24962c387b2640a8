#include "hosm/hypercore.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "hosm/errors.hpp"

namespace hosm {

namespace {

// CSR incidence index: for each vertex, the indices of the edges containing it.
void build_incidence(std::size_t vertex_count, std::span<const HyperEdge> edges,
                     std::vector<std::size_t>& offsets, std::vector<EdgeIndex>& incidence) {
  offsets.assign(vertex_count + 1, 0);
  for (const auto& e : edges)
    for (VertexId v : e.vertices()) ++offsets[v + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  incidence.resize(offsets.back());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (EdgeIndex i = 0; i < edges.size(); ++i)
    for (VertexId v : edges[i].vertices()) incidence[cursor[v]++] = i;
}

}  // namespace

HyperEdge::HyperEdge(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ValidationError("hyperedge with no vertices");
  std::sort(vertices_.begin(), vertices_.end());
  auto dup = std::adjacent_find(vertices_.begin(), vertices_.end());
  if (dup != vertices_.end())
    throw ValidationError("hyperedge repeats vertex " + std::to_string(*dup));
}

bool HyperEdge::contains(std::span<const VertexId> sorted_subset) const noexcept {
  return std::includes(vertices_.begin(), vertices_.end(), sorted_subset.begin(),
                       sorted_subset.end());
}

std::size_t HyperEdgeHash::operator()(const HyperEdge& e) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (VertexId v : e.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Hypergraph Hypergraph::from_edges(std::size_t vertex_count, std::vector<HyperEdge> edges,
                                  std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count)
    throw ValidationError("label map size does not match vertex count");
  Hypergraph g;
  g.vertex_count_ = vertex_count;
  g.labels_ = std::move(labels);
  std::unordered_set<HyperEdge, HyperEdgeHash> seen;
  seen.reserve(edges.size());
  g.edges_.reserve(edges.size());
  for (auto& e : edges) {
    if (e.order() == 0) throw ValidationError("hyperedge with no vertices");
    if (e.vertices().back() >= vertex_count)
      throw ValidationError("vertex id " + std::to_string(e.vertices().back()) +
                            " out of range [0, " + std::to_string(vertex_count) + ")");
    if (seen.insert(e).second) {
      g.edges_.push_back(std::move(e));
    } else {
      ++g.duplicates_collapsed_;
    }
  }
  build_incidence(vertex_count, g.edges_, g.incidence_offsets_, g.incidence_);
  return g;
}

std::span<const EdgeIndex> Hypergraph::incident_edges(VertexId v) const noexcept {
  if (v >= vertex_count_) return {};
  return std::span<const EdgeIndex>(incidence_).subspan(
      incidence_offsets_[v], incidence_offsets_[v + 1] - incidence_offsets_[v]);
}

std::string Hypergraph::label(VertexId v) const {
  return labels_.empty() ? std::to_string(v) : labels_.at(v);
}

std::size_t Hypergraph::max_order() const noexcept {
  std::size_t m = 0;
  for (const auto& e : edges_) m = std::max(m, e.order());
  return m;
}

double Hypergraph::average_order() const noexcept {
  if (edges_.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& e : edges_) total += e.order();
  return static_cast<double>(total) / static_cast<double>(edges_.size());
}

bool Hypergraph::contains(const HyperEdge& e) const noexcept {
  if (e.order() == 0) return false;
  for (EdgeIndex i : incident_edges(e[0]))
    if (edges_[i] == e) return true;
  return false;
}

UniformLayer::UniformLayer(int r, std::size_t vertex_count, std::vector<HyperEdge> edges)
    : order_(r), vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (e.order() != static_cast<std::size_t>(r))
      throw ValidationError("edge of order " + std::to_string(e.order()) + " in " +
                            std::to_string(r) + "-uniform layer");
    if (e.vertices().back() >= vertex_count)
      throw ValidationError("layer edge references vertex outside the parent range");
  }
  build_incidence(vertex_count_, edges_, incidence_offsets_, incidence_);
}

std::span<const EdgeIndex> UniformLayer::incident_edges(VertexId v) const noexcept {
  if (v >= vertex_count_) return {};
  return std::span<const EdgeIndex>(incidence_).subspan(
      incidence_offsets_[v], incidence_offsets_[v + 1] - incidence_offsets_[v]);
}

std::size_t UniformLayer::hyperdegree(std::span<const VertexId> node_set) const {
  if (node_set.empty()) throw DomainError("hyperdegree of an empty node set");
  if (node_set.size() > static_cast<std::size_t>(order_))
    throw DomainError("node set of size " + std::to_string(node_set.size()) +
                      " exceeds layer order " + std::to_string(order_));
  std::vector<VertexId> sorted(node_set.begin(), node_set.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("node set repeats a vertex");
  if (sorted.back() >= vertex_count_) return 0;

  // Scan the shortest incidence list among the members.
  VertexId pivot = sorted.front();
  for (VertexId v : sorted)
    if (incident_edges(v).size() < incident_edges(pivot).size()) pivot = v;
  std::size_t count = 0;
  for (EdgeIndex i : incident_edges(pivot))
    if (edges_[i].contains(sorted)) ++count;
  return count;
}

const UniformLayer& LayerSplit::layer(int r) const {
  if (r < 2 || r > r_max) throw DomainError("no layer of order " + std::to_string(r));
  return layers[static_cast<std::size_t>(r - 2)];
}

std::size_t LayerSplit::covered_edges() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.edge_count();
  return n;
}

LayerSplit split_layers(const Hypergraph& graph, int r_max) {
  if (r_max < 2) throw DomainError("r_max must be at least 2");
  LayerSplit split;
  split.r_max = r_max;
  std::vector<std::vector<HyperEdge>> buckets(static_cast<std::size_t>(r_max - 1));
  for (const auto& e : graph.edges()) {
    const auto r = e.order();
    if (r < 2) {
      ++split.excluded_order_one;
    } else if (r > static_cast<std::size_t>(r_max)) {
      ++split.excluded_above_max;
    } else {
      buckets[r - 2].push_back(e);
    }
  }
  split.layers.reserve(buckets.size());
  for (int r = 2; r <= r_max; ++r)
    split.layers.emplace_back(r, graph.vertex_count(), std::move(buckets[r - 2]));
  return split;
}

}  // namespace hosm
