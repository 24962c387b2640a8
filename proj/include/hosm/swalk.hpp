#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hosm/hypercore.hpp"

namespace hosm {

/// How s-tuples become dyadic nodes.
///   ordered       every ordered s-tuple is a node (valid for all 1 <= s <= r-1)
///   set_quotient  unordered s-subsets; valid only when 2s <= r
enum class ExpansionMode { ordered, set_quotient };

std::string to_string(ExpansionMode mode);
ExpansionMode expansion_mode_from_string(const std::string& name);

/// Mode used when the caller does not force one: the quotient whenever it is valid.
ExpansionMode default_mode(int r, int s) noexcept;

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::uint64_t w = 1;
};

/// Where a weighted graph came from: a plain graph (r = s = 0) or an s-walk expansion.
struct Provenance {
  int r = 0;
  int s = 0;
  ExpansionMode mode = ExpansionMode::ordered;

  bool is_expansion() const noexcept { return s > 0; }
  /// Number of ordered tuples each node stands for (s! for the quotient, else 1).
  std::uint64_t blowup() const noexcept;
};

/// Undirected graph with positive integer weights and no self-loops, stored as
/// CSR with sorted neighbor lists. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Parallel edges are summed. Throws ValidationError on self-loops, zero weights
  /// or endpoints >= node_count.
  static WeightedGraph from_edges(std::size_t node_count, std::span<const WeightedEdge> edges,
                                  Provenance provenance = {},
                                  std::vector<std::vector<VertexId>> node_tuples = {});

  std::size_t node_count() const noexcept { return strength_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  bool empty() const noexcept { return targets_.empty(); }

  std::span<const std::uint32_t> neighbors(std::uint32_t u) const noexcept {
    return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::span<const std::uint64_t> weights(std::uint32_t u) const noexcept {
    return {weights_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  /// w(u, v), 0 when not adjacent.
  std::uint64_t weight(std::uint32_t u, std::uint32_t v) const noexcept;
  std::uint64_t strength(std::uint32_t u) const noexcept { return strength_[u]; }
  std::uint64_t total_weight() const noexcept;  // sum over undirected edges

  const Provenance& provenance() const noexcept { return provenance_; }
  /// The s-tuple (ordered mode) or s-subset (quotient) behind node u; empty for plain graphs.
  std::span<const VertexId> tuple(std::uint32_t u) const noexcept;
  bool has_tuples() const noexcept { return !tuples_.empty(); }
  /// Node index of a tuple, or node_count() when absent.
  std::uint32_t find(std::span<const VertexId> tuple) const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const std::uint32_t> targets() const noexcept { return targets_; }
  std::span<const std::uint64_t> all_weights() const noexcept { return weights_; }

  // Expansion bookkeeping.
  std::size_t dropped_isolated = 0;        // zero-degree tuples removed
  std::size_t orientation_witnesses = 0;   // suffix/prefix matches counted per direction (s > r/2)
  std::size_t both_orientation_edges = 0;  // edges matched in both directions (s > r/2)

 private:
  Provenance provenance_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> strength_;
  std::vector<std::vector<VertexId>> tuples_;
};

/// The s-walk equivalent weighted graph G^(s) of an r-uniform layer.
///
/// 2s <= r: tuples x, y with disjoint sets are joined with weight equal to the number
/// of layer edges containing [x] u [y]. 2s > r (ordered only): x ~ y with weight 1 when
/// |[x] n [y]| = 2s - r, [x] u [y] is a layer edge, and the last 2s - r entries of one
/// equal the first 2s - r entries of the other. Nodes are tuples realizable inside some
/// edge; nodes left without neighbors are dropped and counted.
WeightedGraph expand(const UniformLayer& layer, int s, ExpansionMode mode);
WeightedGraph expand_set_quotient(const UniformLayer& layer, int s);

struct DegreeLawReport {
  std::size_t nodes_checked = 0;
  std::uint64_t max_violation = 0;
  std::vector<VertexId> offending_tuple;  // first node with the largest violation
  std::uint64_t offending_expected = 0;
  std::uint64_t offending_actual = 0;
  bool ok() const noexcept { return max_violation == 0; }
};

/// Checks d_x = D_[x] * C(r-s, s) * s! for every node (the s! factor is dropped for
/// a quotient graph). Requires 1 <= s <= r/2.
DegreeLawReport verify_degree_law(const UniformLayer& layer, int s, const WeightedGraph& graph);

/// `# node <id> <t1,t2,...>` legend lines followed by `u v w` for each edge with u < v.
void write_weighted_edge_list(const WeightedGraph& graph, std::ostream& out);

}  // namespace hosm
