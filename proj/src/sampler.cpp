#include "hosm/sampler.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "hosm/errors.hpp"
#include "hosm/parallel.hpp"
#include "hosm/rng.hpp"

namespace hosm {

void SampleSpec::validate() const {
  if (target_size < 1) throw DomainError("sample target_size must be >= 1");
  if (!(restart_probability >= 0.0 && restart_probability < 1.0))
    throw DomainError("restart_probability must lie in [0, 1)");
  if (effective_max_steps() < target_size)
    throw DomainError("max_steps must be >= target_size");
}

namespace {

bool has_walkable_edge(const Hypergraph& g) {
  return std::any_of(g.edges().begin(), g.edges().end(),
                     [](const HyperEdge& e) { return e.order() >= 2; });
}

// Edges of order >= 2 incident to v, i.e. edges that offer "another node".
void walkable_edges(const Hypergraph& g, VertexId v, std::vector<EdgeIndex>& out) {
  out.clear();
  for (EdgeIndex i : g.incident_edges(v))
    if (g.edges()[i].order() >= 2) out.push_back(i);
}

SampledSubgraph draw_one(const Hypergraph& graph, const SampleBatchSpec& spec, std::size_t i) {
  SampledSubgraph s;
  s.index = i;
  s.seed = derive_seed(spec.seed, i);
  Rng size_rng(derive_seed(s.seed, 0));
  const std::size_t span = spec.size_max - spec.size_min + 1;
  s.target_size = std::min(graph.vertex_count(), spec.size_min + size_rng.below(span));
  SampleSpec one;
  one.target_size = s.target_size;
  one.seed = derive_seed(s.seed, 1);
  one.restart_probability = spec.restart_probability;
  s.sample = rw_sample(graph, one);
  s.induced = induced_subgraph(graph, s.sample.nodes);
  return s;
}

void check_batch(const Hypergraph& graph, const SampleBatchSpec& spec) {
  if (spec.size_min < 1 || spec.size_max < spec.size_min)
    throw DomainError("sample size range must satisfy 1 <= size_min <= size_max");
  if (!has_walkable_edge(graph)) throw UnsupportedInput("cannot sample an edgeless graph");
}

}  // namespace

SampleResult rw_sample(const Hypergraph& graph, const SampleSpec& spec) {
  spec.validate();
  if (!has_walkable_edge(graph)) throw UnsupportedInput("cannot sample an edgeless graph");
  const std::size_t n = graph.vertex_count();
  if (spec.target_size > n)
    throw DomainError("target_size " + std::to_string(spec.target_size) + " exceeds " +
                      std::to_string(n) + " vertices");

  Rng rng(spec.seed);
  SampleResult out;
  std::vector<char> visited(n, 0);
  std::size_t unique = 0;
  auto visit = [&](VertexId v) {
    if (!visited[v]) {
      visited[v] = 1;
      ++unique;
    }
  };

  VertexId current = static_cast<VertexId>(rng.below(n));
  visit(current);
  const std::size_t cap = spec.effective_max_steps();
  std::vector<EdgeIndex> options;
  while (unique < spec.target_size) {
    if (out.steps == cap) {
      out.exhausted = true;
      break;
    }
    ++out.steps;
    walkable_edges(graph, current, options);
    const bool restart =
        options.empty() || (spec.restart_probability > 0.0 && rng.unit() < spec.restart_probability);
    if (restart) {
      ++out.restarts;
      current = static_cast<VertexId>(rng.below(n));
    } else {
      const HyperEdge& e = graph.edges()[options[rng.below(options.size())]];
      // Uniform over the edge's other vertices.
      auto pick = rng.below(e.order() - 1);
      const auto vs = e.vertices();
      auto self = static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), current) - vs.begin());
      current = vs[pick >= self ? pick + 1 : pick];
    }
    visit(current);
  }

  out.nodes.reserve(unique);
  for (VertexId v = 0; v < n; ++v)
    if (visited[v]) out.nodes.push_back(v);
  return out;
}

InducedSubgraph induced_subgraph(const Hypergraph& graph, std::span<const VertexId> nodes) {
  InducedSubgraph out;
  out.to_parent.assign(nodes.begin(), nodes.end());
  std::sort(out.to_parent.begin(), out.to_parent.end());
  out.to_parent.erase(std::unique(out.to_parent.begin(), out.to_parent.end()), out.to_parent.end());
  if (!out.to_parent.empty() && out.to_parent.back() >= graph.vertex_count())
    throw DomainError("sample node outside the vertex range");

  constexpr VertexId absent = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> to_local(graph.vertex_count(), absent);
  for (VertexId i = 0; i < out.to_parent.size(); ++i) to_local[out.to_parent[i]] = i;

  // Each candidate edge is visited from its smallest vertex only.
  std::vector<HyperEdge> kept;
  for (VertexId v : out.to_parent) {
    for (EdgeIndex ei : graph.incident_edges(v)) {
      const HyperEdge& e = graph.edges()[ei];
      if (e[0] != v) continue;
      std::vector<VertexId> local;
      local.reserve(e.order());
      bool inside = true;
      for (VertexId u : e.vertices()) {
        if (to_local[u] == absent) {
          inside = false;
          break;
        }
        local.push_back(to_local[u]);
      }
      if (inside) kept.emplace_back(std::move(local));
    }
  }
  std::sort(kept.begin(), kept.end());

  std::vector<std::string> labels;
  labels.reserve(out.to_parent.size());
  for (VertexId p : out.to_parent) labels.push_back(graph.label(p));
  out.graph = Hypergraph::from_edges(out.to_parent.size(), std::move(kept), std::move(labels));
  return out;
}

std::vector<SampledSubgraph> sample_many(const Hypergraph& graph, const SampleBatchSpec& spec) {
  check_batch(graph, spec);
  std::vector<SampledSubgraph> out(spec.count);
  parallel_for(spec.count, [&](std::size_t i) { out[i] = draw_one(graph, spec, i); });
  return out;
}

namespace serial {

std::vector<SampledSubgraph> sample_many(const Hypergraph& graph, const SampleBatchSpec& spec) {
  check_batch(graph, spec);
  std::vector<SampledSubgraph> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(draw_one(graph, spec, i));
  return out;
}

}  // namespace serial

}  // namespace hosm
