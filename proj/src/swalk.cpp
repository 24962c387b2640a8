#include "hosm/swalk.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "hosm/combinatorics.hpp"
#include "hosm/errors.hpp"

namespace hosm {

std::string to_string(ExpansionMode mode) {
  return mode == ExpansionMode::ordered ? "ordered" : "set_quotient";
}

ExpansionMode expansion_mode_from_string(const std::string& name) {
  if (name == "ordered") return ExpansionMode::ordered;
  if (name == "set_quotient" || name == "quotient") return ExpansionMode::set_quotient;
  throw DomainError("unknown expansion mode '" + name + "'");
}

ExpansionMode default_mode(int r, int s) noexcept {
  return 2 * s <= r ? ExpansionMode::set_quotient : ExpansionMode::ordered;
}

std::uint64_t Provenance::blowup() const noexcept {
  return mode == ExpansionMode::set_quotient ? factorial(s) : 1;
}

WeightedGraph WeightedGraph::from_edges(std::size_t node_count, std::span<const WeightedEdge> edges,
                                        Provenance provenance,
                                        std::vector<std::vector<VertexId>> node_tuples) {
  if (!node_tuples.empty() && node_tuples.size() != node_count)
    throw ValidationError("tuple legend size does not match node count");
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> merged;
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count)
      throw ValidationError("edge endpoint out of range");
    if (e.u == e.v) throw ValidationError("self-loop at node " + std::to_string(e.u));
    if (e.w == 0) throw ValidationError("zero edge weight");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
  }

  WeightedGraph g;
  g.provenance_ = provenance;
  g.tuples_ = std::move(node_tuples);
  g.strength_.assign(node_count, 0);
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& [key, w] : merged) {
    ++g.offsets_[key.first + 1];
    ++g.offsets_[key.second + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.resize(g.offsets_.back());
  g.weights_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Keys arrive in (u, v) order: node x first receives its smaller neighbors (keys
  // (u, x), u < x) and then its larger ones, so every row ends up sorted.
  for (const auto& [key, w] : merged) {
    auto [u, v] = key;
    g.targets_[cursor[u]] = v;
    g.weights_[cursor[u]++] = w;
    g.targets_[cursor[v]] = u;
    g.weights_[cursor[v]++] = w;
    g.strength_[u] += w;
    g.strength_[v] += w;
  }
  return g;
}

std::uint64_t WeightedGraph::weight(std::uint32_t u, std::uint32_t v) const noexcept {
  if (u >= node_count() || v >= node_count()) return 0;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0;
  return weights(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::uint64_t WeightedGraph::total_weight() const noexcept {
  return std::accumulate(strength_.begin(), strength_.end(), std::uint64_t{0}) / 2;
}

std::span<const VertexId> WeightedGraph::tuple(std::uint32_t u) const noexcept {
  if (u >= tuples_.size()) return {};
  return tuples_[u];
}

std::uint32_t WeightedGraph::find(std::span<const VertexId> t) const {
  std::vector<VertexId> key(t.begin(), t.end());
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), key);
  if (it == tuples_.end() || *it != key) return static_cast<std::uint32_t>(node_count());
  return static_cast<std::uint32_t>(it - tuples_.begin());
}

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<VertexId>& t) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ULL;
    for (VertexId v : t) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Tuples of one hyperedge: all s-subsets (quotient) or all ordered s-tuples.
std::vector<std::vector<VertexId>> tuples_of(const HyperEdge& e, int s, ExpansionMode mode) {
  std::vector<std::vector<VertexId>> out;
  for_each_combination(static_cast<int>(e.order()), s, [&](const std::vector<int>& idx) {
    std::vector<VertexId> t;
    t.reserve(idx.size());
    for (int i : idx) t.push_back(e[static_cast<std::size_t>(i)]);
    if (mode == ExpansionMode::set_quotient) {
      out.push_back(std::move(t));
    } else {
      do {
        out.push_back(t);
      } while (std::next_permutation(t.begin(), t.end()));
    }
  });
  return out;
}

bool disjoint_sorted(std::vector<VertexId> a, std::vector<VertexId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

std::size_t overlap(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::size_t n = 0;
  for (VertexId x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) ++n;
  return n;
}

// Last k entries of x equal the first k entries of y.
bool suffix_meets_prefix(const std::vector<VertexId>& x, const std::vector<VertexId>& y,
                         std::size_t k) {
  return std::equal(x.end() - static_cast<std::ptrdiff_t>(k), x.end(), y.begin());
}

}  // namespace

WeightedGraph expand(const UniformLayer& layer, int s, ExpansionMode mode) {
  const int r = layer.order();
  if (s < 1 || s > r - 1)
    throw DomainError("s = " + std::to_string(s) + " outside [1, " + std::to_string(r - 1) + "]");
  if (mode == ExpansionMode::set_quotient && 2 * s > r)
    throw DomainError("set-quotient expansion requires 2s <= r");
  const bool overlapping = 2 * s > r;
  const std::size_t shared = overlapping ? static_cast<std::size_t>(2 * s - r) : 0;

  std::unordered_map<std::vector<VertexId>, std::uint32_t, TupleHash> ids;
  std::vector<std::vector<VertexId>> legend;
  std::unordered_map<std::uint64_t, std::uint64_t> acc;
  std::size_t witnesses = 0, both = 0;

  for (const auto& e : layer.edges()) {
    auto tuples = tuples_of(e, s, mode);
    std::vector<std::uint32_t> local(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      auto [it, inserted] = ids.try_emplace(tuples[i], static_cast<std::uint32_t>(legend.size()));
      if (inserted) legend.push_back(tuples[i]);
      local[i] = it->second;
    }
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      for (std::size_t j = i + 1; j < tuples.size(); ++j) {
        const auto& x = tuples[i];
        const auto& y = tuples[j];
        std::uint64_t add = 0;
        if (!overlapping) {
          // Both sets lie in e; disjointness makes e a witness of [x] u [y].
          if (disjoint_sorted(x, y)) add = 1;
        } else if (overlap(x, y) == shared) {
          // |[x] u [y]| = r and both lie in e, so the union is e itself.
          const bool forward = suffix_meets_prefix(x, y, shared);
          const bool backward = suffix_meets_prefix(y, x, shared);
          if (forward || backward) {
            add = 1;
            witnesses += static_cast<std::size_t>(forward) + static_cast<std::size_t>(backward);
            both += static_cast<std::size_t>(forward && backward);
          }
        }
        if (add == 0) continue;
        auto a = std::min(local[i], local[j]);
        auto b = std::max(local[i], local[j]);
        const auto key = (static_cast<std::uint64_t>(a) << 32) | b;
        if (overlapping) {
          acc[key] = 1;  // the union fixes the witnessing edge, so at most one exists
        } else {
          acc[key] += add;
        }
      }
    }
  }

  // Sort nodes by tuple for a canonical numbering, dropping isolated ones.
  std::vector<std::uint64_t> degree(legend.size(), 0);
  for (const auto& [key, w] : acc) {
    degree[key >> 32] += w;
    degree[key & 0xffffffffULL] += w;
  }
  std::vector<std::uint32_t> order;
  std::size_t dropped = 0;
  for (std::uint32_t i = 0; i < legend.size(); ++i) {
    if (degree[i] > 0) {
      order.push_back(i);
    } else {
      ++dropped;
    }
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return legend[a] < legend[b]; });
  std::vector<std::uint32_t> remap(legend.size(), 0);
  std::vector<std::vector<VertexId>> tuples;
  tuples.reserve(order.size());
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    remap[order[k]] = k;
    tuples.push_back(std::move(legend[order[k]]));
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc)
    edges.push_back({remap[key >> 32], remap[key & 0xffffffffULL], w});

  const std::size_t n = tuples.size();
  auto g = WeightedGraph::from_edges(n, edges, Provenance{r, s, mode}, std::move(tuples));
  g.dropped_isolated = dropped;
  g.orientation_witnesses = witnesses;
  g.both_orientation_edges = both;
  return g;
}

WeightedGraph expand_set_quotient(const UniformLayer& layer, int s) {
  return expand(layer, s, ExpansionMode::set_quotient);
}

DegreeLawReport verify_degree_law(const UniformLayer& layer, int s, const WeightedGraph& graph) {
  const int r = layer.order();
  if (s < 1 || 2 * s > r) throw DomainError("degree law holds only for 1 <= s <= r/2");
  if (graph.provenance().s != s || graph.provenance().r != r)
    throw DomainError("graph was not expanded from this (r, s)");
  const std::uint64_t per_set = binomial(r - s, s) *
      (graph.provenance().mode == ExpansionMode::ordered ? factorial(s) : 1);

  DegreeLawReport rep;
  for (std::uint32_t u = 0; u < graph.node_count(); ++u) {
    const auto t = graph.tuple(u);
    const std::uint64_t expected = layer.hyperdegree(t) * per_set;
    const std::uint64_t actual = graph.strength(u);
    const std::uint64_t diff = expected > actual ? expected - actual : actual - expected;
    ++rep.nodes_checked;
    if (diff > rep.max_violation) {
      rep.max_violation = diff;
      rep.offending_tuple.assign(t.begin(), t.end());
      rep.offending_expected = expected;
      rep.offending_actual = actual;
    }
  }
  return rep;
}

void write_weighted_edge_list(const WeightedGraph& graph, std::ostream& out) {
  const auto& p = graph.provenance();
  out << "# r " << p.r << " s " << p.s << " mode " << to_string(p.mode) << " nodes "
      << graph.node_count() << " edges " << graph.edge_count() << '\n';
  if (graph.has_tuples()) {
    for (std::uint32_t u = 0; u < graph.node_count(); ++u) {
      out << "# node " << u << ' ';
      const auto t = graph.tuple(u);
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << '\n';
    }
  }
  for (std::uint32_t u = 0; u < graph.node_count(); ++u) {
    const auto nb = graph.neighbors(u);
    const auto ws = graph.weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (u < nb[k]) out << u << ' ' << nb[k] << ' ' << ws[k] << '\n';
  }
}

}  // namespace hosm
