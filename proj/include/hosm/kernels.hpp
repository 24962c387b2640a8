#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the library
// and a serial reference kept for tests and benchmarks; both produce bit-identical
// results for any thread count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hosm/swalk.hpp"

namespace hosm::kernels {

/// S = D^-1/2 W D^-1/2 restricted to nodes of positive strength.
struct SymmetricCsr {
  std::size_t n = 0;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<std::uint32_t> original;  // retained index -> graph node
  std::size_t dropped = 0;
};

SymmetricCsr normalized_adjacency(const WeightedGraph& graph);

/// tr(S^l) for l = 1..l_max (index l-1), from per-node propagation of e_i through
/// ceil(l_max/2) sparse products: tr(S^(a+b)) = sum_i <S^a e_i, S^b e_i>.
std::vector<long double> trace_powers_omp(const SymmetricCsr& s, int l_max);
std::vector<long double> trace_powers_serial(const SymmetricCsr& s, int l_max);

/// Number of l-step weighted walks (uniform start) that end at their start.
/// Walks are split into fixed shards seeded by derive_seed(seed, shard).
std::uint64_t count_returns_omp(const WeightedGraph& graph, int l, std::size_t n_walks,
                                std::uint64_t seed);
std::uint64_t count_returns_serial(const WeightedGraph& graph, int l, std::size_t n_walks,
                                   std::uint64_t seed);

// Triangle scan over a weighted graph: h < i < j, sorted-neighbor intersection.
struct TriangleSums {
  std::uint64_t triangles = 0;
  long double min_weight_sum = 0;   // sum of min(w_hi, w_ij, w_jh)
  long double min_weight_over_hyper = 0;   // sum of minw / (D_h D_i D_j)
  long double min_weight_over_dyadic = 0;  // sum of minw / (d_h d_i d_j)
  long double product_over_dyadic = 0;     // sum of w_hi w_ij w_jh / (d_h d_i d_j)
};

/// `hyper_degree[u]` supplies D for node u (use 1s for plain graphs).
TriangleSums triangle_scan_omp(const WeightedGraph& graph, const std::vector<double>& hyper_degree);
TriangleSums triangle_scan_serial(const WeightedGraph& graph,
                                  const std::vector<double>& hyper_degree);

inline constexpr std::size_t kWalkShard = 1u << 14;

}  // namespace hosm::kernels
