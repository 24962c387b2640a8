#pragma once

// Random instance generators and brute-force oracles. Nothing here calls the
// library's expansion, moment or triangle code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "hosm/hypercore.hpp"
#include "hosm/rng.hpp"
#include "hosm/swalk.hpp"

namespace hosm::testing {

/// m distinct r-subsets of [0, n) (fewer if C(n, r) < m).
inline UniformLayer random_layer(Rng& rng, std::size_t n, int r, std::size_t m) {
  std::set<std::vector<VertexId>> picked;
  std::size_t attempts = 0;
  while (picked.size() < m && attempts++ < 50 * m + 100) {
    std::vector<VertexId> pool(n);
    for (VertexId i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < r; ++i) std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(i) + rng.below(n - static_cast<std::size_t>(i))]);
    std::vector<VertexId> e(pool.begin(), pool.begin() + r);
    std::sort(e.begin(), e.end());
    picked.insert(e);
  }
  std::vector<HyperEdge> edges;
  for (const auto& e : picked) edges.emplace_back(e);
  return UniformLayer(r, n, std::move(edges));
}

/// Random hypergraph mixing orders 1..r_max.
inline Hypergraph random_hypergraph(Rng& rng, std::size_t n, int r_max, std::size_t m) {
  std::vector<HyperEdge> edges;
  for (std::size_t k = 0; k < m; ++k) {
    const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min<std::size_t>(r_max, n))));
    std::vector<VertexId> pool(n);
    for (VertexId i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < r; ++i) std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(i) + rng.below(n - static_cast<std::size_t>(i))]);
    edges.emplace_back(std::vector<VertexId>(pool.begin(), pool.begin() + r));
  }
  return Hypergraph::from_edges(n, std::move(edges));
}

/// Erdos-Renyi-style weighted graph with integer weights in [1, w_max].
inline WeightedGraph random_weighted_graph(Rng& rng, std::size_t n, double p, std::uint64_t w_max) {
  std::vector<WeightedEdge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.push_back({u, v, 1 + rng.below(w_max)});
  return WeightedGraph::from_edges(n, edges);
}

inline std::size_t count_containing(const UniformLayer& layer, std::vector<VertexId> set) {
  std::sort(set.begin(), set.end());
  std::size_t c = 0;
  for (const auto& e : layer.edges())
    if (std::includes(e.vertices().begin(), e.vertices().end(), set.begin(), set.end())) ++c;
  return c;
}

using Tuple = std::vector<VertexId>;
using AdjacencyTable = std::map<std::pair<Tuple, Tuple>, std::uint64_t>;  // first < second

/// Every ordered s-tuple of distinct vertices of [0, n).
inline std::vector<Tuple> all_tuples(std::size_t n, int s) {
  std::vector<Tuple> out;
  Tuple t;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(t.size()) == s) {
      out.push_back(t);
      return;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      t.push_back(v);
      self(self);
      t.pop_back();
      used[v] = 0;
    }
  };
  rec(rec);
  return out;
}

/// Direct evaluation of the adjacency rule over all realizable tuple pairs.
/// `ordered == false` gives the set-quotient (sorted tuples only).
inline AdjacencyTable brute_force_expansion(const UniformLayer& layer, int s, bool ordered) {
  const int r = layer.order();
  std::vector<Tuple> nodes;
  for (auto& t : all_tuples(layer.vertex_count(), s)) {
    if (!ordered && !std::is_sorted(t.begin(), t.end())) continue;
    if (count_containing(layer, t) > 0) nodes.push_back(t);
  }
  AdjacencyTable table;
  const std::size_t k = 2 * s > r ? static_cast<std::size_t>(2 * s - r) : 0;
  for (const auto& x : nodes) {
    for (const auto& y : nodes) {
      if (!(x < y)) continue;
      std::set<VertexId> sx(x.begin(), x.end()), sy(y.begin(), y.end());
      std::vector<VertexId> inter, uni;
      std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(inter));
      std::set_union(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(uni));
      std::uint64_t w = 0;
      if (2 * s <= r) {
        if (inter.empty()) w = count_containing(layer, uni);
      } else if (inter.size() == k && uni.size() == static_cast<std::size_t>(r) &&
                 count_containing(layer, uni) > 0) {
        const bool fwd = std::equal(x.end() - static_cast<std::ptrdiff_t>(k), x.end(), y.begin());
        const bool bwd = std::equal(y.end() - static_cast<std::ptrdiff_t>(k), y.end(), x.begin());
        if (fwd || bwd) w = 1;
      }
      if (w > 0) table[{x, y}] = w;
    }
  }
  return table;
}

inline AdjacencyTable table_of(const WeightedGraph& g) {
  AdjacencyTable t;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    const auto ws = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Tuple a(g.tuple(u).begin(), g.tuple(u).end());
      Tuple b(g.tuple(nb[i]).begin(), g.tuple(nb[i]).end());
      if (a < b) t[{a, b}] = ws[i];
    }
  }
  return t;
}

/// m_l = tr(P^l) / n over walkable nodes via dense row-stochastic powers, l = 1..l_max.
inline std::vector<double> dense_power_moments(const WeightedGraph& g, int l_max) {
  std::vector<std::uint32_t> keep;
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    if (g.strength(u) > 0) keep.push_back(u);
  const std::size_t n = keep.size();
  std::vector<double> out(static_cast<std::size_t>(l_max), 0.0);
  if (n == 0) return out;
  std::vector<long double> P(n * n, 0.0L), cur(n * n, 0.0L), next(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      P[i * n + j] = static_cast<long double>(g.weight(keep[i], keep[j])) / g.strength(keep[i]);
  cur = P;
  for (int l = 1; l <= l_max; ++l) {
    long double tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += cur[i * n + i];
    out[static_cast<std::size_t>(l - 1)] = static_cast<double>(tr / n / g.provenance().blowup());
    if (l == l_max) break;
    std::fill(next.begin(), next.end(), 0.0L);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const long double a = cur[i * n + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += a * P[k * n + j];
      }
    std::swap(cur, next);
  }
  return out;
}

struct BruteTriangles {
  std::uint64_t count = 0;
  long double min_weight_sum = 0;
  long double min_weight_over_D = 0;
  long double min_weight_over_d = 0;
};

/// All C(n, 3) node triples.
inline BruteTriangles brute_triangles(const WeightedGraph& g, const std::vector<double>& D) {
  BruteTriangles b;
  const auto n = static_cast<std::uint32_t>(g.node_count());
  for (std::uint32_t h = 0; h < n; ++h)
    for (std::uint32_t i = h + 1; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        const auto a = g.weight(h, i), c = g.weight(i, j), e = g.weight(h, j);
        if (a == 0 || c == 0 || e == 0) continue;
        const long double mw = static_cast<long double>(std::min({a, c, e}));
        ++b.count;
        b.min_weight_sum += mw;
        b.min_weight_over_D += mw / (static_cast<long double>(D[h]) * D[i] * D[j]);
        b.min_weight_over_d += mw / (static_cast<long double>(g.strength(h)) * g.strength(i) * g.strength(j));
      }
  return b;
}

/// Triples of distinct edges with pairwise intersections of size exactly s that are pairwise disjoint.
inline std::uint64_t brute_hyper_triads(const UniformLayer& layer, int s) {
  const auto E = layer.edges();
  auto inter = [&](std::size_t a, std::size_t b) {
    std::vector<VertexId> out;
    std::set_intersection(E[a].vertices().begin(), E[a].vertices().end(), E[b].vertices().begin(),
                          E[b].vertices().end(), std::back_inserter(out));
    return out;
  };
  auto disjoint = [](const std::vector<VertexId>& x, const std::vector<VertexId>& y) {
    for (auto v : x)
      if (std::find(y.begin(), y.end(), v) != y.end()) return false;
    return true;
  };
  std::uint64_t count = 0;
  for (std::size_t a = 0; a < E.size(); ++a)
    for (std::size_t b = a + 1; b < E.size(); ++b)
      for (std::size_t c = b + 1; c < E.size(); ++c) {
        auto ab = inter(a, b), bc = inter(b, c), ca = inter(c, a);
        const auto ss = static_cast<std::size_t>(s);
        if (ab.size() != ss || bc.size() != ss || ca.size() != ss) continue;
        if (disjoint(ab, bc) && disjoint(bc, ca) && disjoint(ca, ab)) ++count;
      }
  return count;
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol * scale || std::abs(a - b) <= 1e-12;
}

inline UniformLayer layer_of(int r, std::size_t n, std::vector<std::vector<VertexId>> edges) {
  std::vector<HyperEdge> es;
  for (auto& e : edges) es.emplace_back(std::move(e));
  return UniformLayer(r, n, std::move(es));
}

}  // namespace hosm::testing
