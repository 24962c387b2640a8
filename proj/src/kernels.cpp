#include "hosm/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "hosm/parallel.hpp"
#include "hosm/rng.hpp"

namespace hosm::kernels {

SymmetricCsr normalized_adjacency(const WeightedGraph& graph) {
  SymmetricCsr s;
  const auto n = graph.node_count();
  std::vector<std::uint32_t> local(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (graph.strength(u) == 0) {
      ++s.dropped;
      continue;
    }
    local[u] = static_cast<std::uint32_t>(s.original.size());
    s.original.push_back(u);
  }
  s.n = s.original.size();
  s.offsets.assign(s.n + 1, 0);
  for (std::size_t k = 0; k < s.n; ++k) {
    const auto u = s.original[k];
    const auto nb = graph.neighbors(u);
    const auto ws = graph.weights(u);
    const double du = static_cast<double>(graph.strength(u));
    for (std::size_t j = 0; j < nb.size(); ++j) {
      const double dv = static_cast<double>(graph.strength(nb[j]));
      s.cols.push_back(local[nb[j]]);
      s.vals.push_back(static_cast<double>(ws[j]) / std::sqrt(du * dv));
    }
    s.offsets[k + 1] = s.cols.size();
  }
  return s;
}

namespace {

// Scratch for one propagation: dense value arrays plus touched-index lists per level.
struct Propagator {
  explicit Propagator(const SymmetricCsr& s, int levels)
      : csr(s), dense(static_cast<std::size_t>(levels + 1), std::vector<double>(s.n, 0.0)),
        touched(static_cast<std::size_t>(levels + 1)) {}

  // Writes tr contributions <S^a e_i, S^b e_i> for l = 1..l_max into out[0..l_max).
  void run(std::uint32_t start, int l_max, long double* out) {
    const int half = (l_max + 1) / 2;
    dense[0][start] = 1.0;
    touched[0].assign(1, start);
    for (int k = 1; k <= half; ++k) {
      auto& cur = dense[static_cast<std::size_t>(k)];
      auto& cur_t = touched[static_cast<std::size_t>(k)];
      const auto& prev = dense[static_cast<std::size_t>(k - 1)];
      for (std::uint32_t j : touched[static_cast<std::size_t>(k - 1)]) {
        const double x = prev[j];
        for (auto p = csr.offsets[j]; p < csr.offsets[j + 1]; ++p) {
          const auto c = csr.cols[p];
          if (cur[c] == 0.0) cur_t.push_back(c);  // entries are positive sums, never cancel
          cur[c] += csr.vals[p] * x;
        }
      }
    }
    for (int l = 1; l <= l_max; ++l) {
      const int a = l / 2;
      const int b = l - a;
      const auto& va = dense[static_cast<std::size_t>(a)];
      const auto& vb = dense[static_cast<std::size_t>(b)];
      long double dot = 0;
      for (std::uint32_t j : touched[static_cast<std::size_t>(a)])
        dot += static_cast<long double>(va[j]) * vb[j];
      out[l - 1] = dot;
    }
    for (int k = 0; k <= half; ++k) {
      auto& cur = dense[static_cast<std::size_t>(k)];
      for (std::uint32_t j : touched[static_cast<std::size_t>(k)]) cur[j] = 0.0;
      touched[static_cast<std::size_t>(k)].clear();
    }
  }

  const SymmetricCsr& csr;
  std::vector<std::vector<double>> dense;
  std::vector<std::vector<std::uint32_t>> touched;
};

std::vector<long double> reduce_rows(const std::vector<long double>& rows, std::size_t n, int l_max) {
  std::vector<long double> tr(static_cast<std::size_t>(l_max), 0.0L);
  for (std::size_t i = 0; i < n; ++i)
    for (int l = 0; l < l_max; ++l) tr[static_cast<std::size_t>(l)] += rows[i * static_cast<std::size_t>(l_max) + static_cast<std::size_t>(l)];
  return tr;
}

// Cumulative weights of every row, for O(log deg) neighbor draws.
std::vector<std::uint64_t> cumulative_weights(const WeightedGraph& g) {
  std::vector<std::uint64_t> cum(g.all_weights().size());
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    std::uint64_t acc = 0;
    for (auto p = g.offsets()[u]; p < g.offsets()[u + 1]; ++p) {
      acc += g.all_weights()[p];
      cum[p] = acc;
    }
  }
  return cum;
}

std::uint64_t run_shard(const WeightedGraph& g, const std::vector<std::uint64_t>& cum,
                        const std::vector<std::uint32_t>& walkable, int l, std::size_t walks,
                        std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t returns = 0;
  const auto offsets = g.offsets();
  const auto targets = g.targets();
  for (std::size_t w = 0; w < walks; ++w) {
    const std::uint32_t start = walkable[rng.below(walkable.size())];
    std::uint32_t u = start;
    for (int step = 0; step < l; ++step) {
      const auto b = cum.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
      const auto e = cum.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
      const std::uint64_t x = rng.below(g.strength(u));
      const auto it = std::upper_bound(b, e, x);
      u = targets[offsets[u] + static_cast<std::size_t>(it - b)];
    }
    if (u == start) ++returns;
  }
  return returns;
}

template <bool Parallel>
std::uint64_t count_returns(const WeightedGraph& g, int l, std::size_t n_walks, std::uint64_t seed) {
  std::vector<std::uint32_t> walkable;
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    if (g.strength(u) > 0) walkable.push_back(u);
  if (walkable.empty() || n_walks == 0) return 0;
  const auto cum = cumulative_weights(g);
  const std::size_t shards = (n_walks + kWalkShard - 1) / kWalkShard;
  std::vector<std::uint64_t> per(shards, 0);
  auto body = [&](std::size_t k) {
    const std::size_t walks = std::min(kWalkShard, n_walks - k * kWalkShard);
    per[k] = run_shard(g, cum, walkable, l, walks, derive_seed(seed, k));
  };
  if constexpr (Parallel) {
    parallel_for(shards, body);
  } else {
    for (std::size_t k = 0; k < shards; ++k) body(k);
  }
  std::uint64_t total = 0;
  for (auto v : per) total += v;
  return total;
}

// Triangles with apex h: intersect the >h tails of N(h) and N(i) for each neighbor i > h.
void scan_apex(const WeightedGraph& g, const std::vector<double>& D, std::uint32_t h,
               TriangleSums& acc) {
  const auto nh = g.neighbors(h);
  const auto wh = g.weights(h);
  const auto first_above = [](std::span<const std::uint32_t> nb, std::uint32_t x) {
    return static_cast<std::size_t>(std::upper_bound(nb.begin(), nb.end(), x) - nb.begin());
  };
  for (std::size_t a = first_above(nh, h); a < nh.size(); ++a) {
    const auto i = nh[a];
    const auto ni = g.neighbors(i);
    const auto wi = g.weights(i);
    std::size_t p = a + 1;
    std::size_t q = first_above(ni, i);
    while (p < nh.size() && q < ni.size()) {
      if (nh[p] < ni[q]) {
        ++p;
      } else if (ni[q] < nh[p]) {
        ++q;
      } else {
        const auto j = nh[p];
        const std::uint64_t w_hi = wh[a], w_hj = wh[p], w_ij = wi[q];
        const long double minw = static_cast<long double>(std::min({w_hi, w_hj, w_ij}));
        const long double ddd = static_cast<long double>(g.strength(h)) * g.strength(i) * g.strength(j);
        const long double DDD = static_cast<long double>(D[h]) * D[i] * D[j];
        ++acc.triangles;
        acc.min_weight_sum += minw;
        acc.min_weight_over_hyper += minw / DDD;
        acc.min_weight_over_dyadic += minw / ddd;
        acc.product_over_dyadic += static_cast<long double>(w_hi) * w_hj * w_ij / ddd;
        ++p;
        ++q;
      }
    }
  }
}

TriangleSums add(TriangleSums a, const TriangleSums& b) {
  a.triangles += b.triangles;
  a.min_weight_sum += b.min_weight_sum;
  a.min_weight_over_hyper += b.min_weight_over_hyper;
  a.min_weight_over_dyadic += b.min_weight_over_dyadic;
  a.product_over_dyadic += b.product_over_dyadic;
  return a;
}

}  // namespace

std::vector<long double> trace_powers_serial(const SymmetricCsr& s, int l_max) {
  if (l_max < 1 || s.n == 0) return std::vector<long double>(static_cast<std::size_t>(std::max(l_max, 0)), 0.0L);
  std::vector<long double> rows(s.n * static_cast<std::size_t>(l_max), 0.0L);
  Propagator prop(s, (l_max + 1) / 2);
  for (std::uint32_t i = 0; i < s.n; ++i) prop.run(i, l_max, rows.data() + i * static_cast<std::size_t>(l_max));
  return reduce_rows(rows, s.n, l_max);
}

std::vector<long double> trace_powers_omp(const SymmetricCsr& s, int l_max) {
  if (l_max < 1 || s.n == 0) return std::vector<long double>(static_cast<std::size_t>(std::max(l_max, 0)), 0.0L);
  std::vector<long double> rows(s.n * static_cast<std::size_t>(l_max), 0.0L);
  const auto n = static_cast<std::int64_t>(s.n);
#pragma omp parallel
  {
    Propagator prop(s, (l_max + 1) / 2);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i)
      prop.run(static_cast<std::uint32_t>(i), l_max, rows.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(l_max));
  }
  // Fixed-order reduction keeps results independent of the schedule.
  return reduce_rows(rows, s.n, l_max);
}

std::uint64_t count_returns_omp(const WeightedGraph& graph, int l, std::size_t n_walks,
                                std::uint64_t seed) {
  return count_returns<true>(graph, l, n_walks, seed);
}

std::uint64_t count_returns_serial(const WeightedGraph& graph, int l, std::size_t n_walks,
                                   std::uint64_t seed) {
  return count_returns<false>(graph, l, n_walks, seed);
}

TriangleSums triangle_scan_serial(const WeightedGraph& graph, const std::vector<double>& D) {
  TriangleSums acc;
  for (std::uint32_t h = 0; h < graph.node_count(); ++h) {
    TriangleSums apex;
    scan_apex(graph, D, h, apex);
    acc = add(acc, apex);
  }
  return acc;
}

TriangleSums triangle_scan_omp(const WeightedGraph& graph, const std::vector<double>& D) {
  // Per-apex partials reduced in node order, matching the serial summation exactly.
  const auto n = graph.node_count();
  std::vector<TriangleSums> per(n);
  parallel_for(n, [&](std::size_t h) { scan_apex(graph, D, static_cast<std::uint32_t>(h), per[h]); });
  TriangleSums acc;
  for (const auto& p : per) acc = add(acc, p);
  return acc;
}

}  // namespace hosm::kernels
