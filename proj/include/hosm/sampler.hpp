#pragma once

#include <cstdint>
#include <vector>

#include "hosm/hypercore.hpp"

namespace hosm {

struct SampleSpec {
  std::size_t target_size = 1;
  std::uint64_t seed = 0;
  double restart_probability = 0.0;  // in [0, 1)
  std::size_t max_steps = 0;         // 0 selects 100 * target_size

  /// Throws DomainError when the invariants (target >= 1, max_steps >= target, p in [0,1)) fail.
  void validate() const;
  std::size_t effective_max_steps() const noexcept {
    return max_steps == 0 ? 100 * target_size : max_steps;
  }
};

struct SampleResult {
  std::vector<VertexId> nodes;  // sorted
  std::size_t steps = 0;
  std::size_t restarts = 0;
  bool exhausted = false;  // step cap hit before reaching target_size
};

/// Random-walk node sampling over hyperedges.
///
/// Starts at a uniform node; each step picks a uniform incident edge (order >= 2)
/// and then a uniform vertex of that edge other than the current one. A node without
/// such edges, or a restart coin flip, jumps to a uniform node of the whole graph.
/// Unique visited nodes count toward the target. Deterministic in `spec.seed`.
SampleResult rw_sample(const Hypergraph& graph, const SampleSpec& spec);

struct InducedSubgraph {
  Hypergraph graph;
  std::vector<VertexId> to_parent;  // new id -> parent id
};

/// Keeps exactly the edges whose vertices all lie in `nodes`; relabels densely in
/// ascending parent-id order.
InducedSubgraph induced_subgraph(const Hypergraph& graph, std::span<const VertexId> nodes);

struct SampleBatchSpec {
  std::size_t count = 0;
  std::size_t size_min = 50;
  std::size_t size_max = 200;
  std::uint64_t seed = 0;
  double restart_probability = 0.0;
};

struct SampledSubgraph {
  std::size_t index = 0;
  std::uint64_t seed = 0;   // derived per-sample seed
  std::size_t target_size = 0;
  SampleResult sample;
  InducedSubgraph induced;
};

/// Draws `count` samples; sample i uses derive_seed(seed, i) for both its size draw
/// and its walk. OpenMP-parallel; identical output for any thread count.
std::vector<SampledSubgraph> sample_many(const Hypergraph& graph, const SampleBatchSpec& spec);

namespace serial {
std::vector<SampledSubgraph> sample_many(const Hypergraph& graph, const SampleBatchSpec& spec);
}  // namespace serial

}  // namespace hosm
