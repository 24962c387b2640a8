#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>
#include <vector>

#include "hosm/features.hpp"
#include "hosm/hypercore.hpp"
#include "hosm/kernels.hpp"
#include "hosm/parallel.hpp"
#include "hosm/rng.hpp"
#include "hosm/sampler.hpp"
#include "hosm/swalk.hpp"
#include "oracles.hpp"

namespace {

using namespace hosm;

// Expansion of a random 4-uniform layer at s = 2; arg is the layer's edge count.
const WeightedGraph& layer_graph(std::size_t m) {
  static std::vector<std::pair<std::size_t, WeightedGraph>> cache;
  for (const auto& [k, g] : cache)
    if (k == m) return g;
  Rng rng(derive_seed(7, m));
  const auto layer = testing::random_layer(rng, m / 2 + 8, 4, m);
  cache.emplace_back(m, expand(layer, 2, ExpansionMode::ordered));
  return cache.back().second;
}

const kernels::SymmetricCsr& layer_csr(std::size_t m) {
  static std::vector<std::pair<std::size_t, kernels::SymmetricCsr>> cache;
  for (const auto& [k, s] : cache)
    if (k == m) return s;
  cache.emplace_back(m, kernels::normalized_adjacency(layer_graph(m)));
  return cache.back().second;
}

template <bool Parallel>
void BM_TracePowers(benchmark::State& state) {
  const auto& s = layer_csr(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto t = Parallel ? kernels::trace_powers_omp(s, 4) : kernels::trace_powers_serial(s, 4);
    benchmark::DoNotOptimize(t.data());
  }
  state.counters["nodes"] = static_cast<double>(s.n);
}

template <bool Parallel>
void BM_TriangleScan(benchmark::State& state) {
  const auto& g = layer_graph(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> ones(g.node_count(), 1.0);
  for (auto _ : state) {
    auto t = Parallel ? kernels::triangle_scan_omp(g, ones) : kernels::triangle_scan_serial(g, ones);
    benchmark::DoNotOptimize(t.triangles);
  }
  state.counters["nodes"] = static_cast<double>(g.node_count());
}

template <bool Parallel>
void BM_CountReturns(benchmark::State& state) {
  const auto& g = layer_graph(2000);
  const auto walks = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto c = Parallel ? kernels::count_returns_omp(g, 3, walks, 99)
                      : kernels::count_returns_serial(g, 3, walks, 99);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * walks));
}

// Corpus samples when the contact data is present, random hypergraphs otherwise.
const std::vector<Hypergraph>& feature_inputs() {
  static const std::vector<Hypergraph> graphs = [] {
    std::vector<Hypergraph> out;
    const std::filesystem::path corpus = HOSM_BENCH_DATA_DIR "/contact-high-school";
    if (looks_like_benson(corpus)) {
      const auto parent = read_benson(corpus).graph;
      SampleBatchSpec spec;
      spec.count = 32;
      spec.seed = 2024;
      for (auto& s : sample_many(parent, spec)) out.push_back(std::move(s.induced.graph));
    } else {
      Rng rng(2024);
      for (int k = 0; k < 32; ++k) out.push_back(testing::random_hypergraph(rng, 120, 5, 600));
    }
    return out;
  }();
  return graphs;
}

template <bool Parallel>
void BM_ExtractFeatures(benchmark::State& state) {
  const auto& graphs = feature_inputs();
  std::vector<FeatureJob> jobs;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    jobs.push_back({&graphs[i], "g" + std::to_string(i), std::nullopt});
  const FeatureSchema schema;
  for (auto _ : state) {
    auto f = Parallel ? extract_features_many(jobs, schema) : serial::extract_features_many(jobs, schema);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * jobs.size()));
  state.counters["threads"] = max_threads();
}

}  // namespace

BENCHMARK(BM_TracePowers<false>)->Name("trace_powers/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_TracePowers<true>)->Name("trace_powers/omp")->Arg(500)->Arg(2000);
BENCHMARK(BM_TriangleScan<false>)->Name("triangle_scan/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_TriangleScan<true>)->Name("triangle_scan/omp")->Arg(500)->Arg(2000);
BENCHMARK(BM_CountReturns<false>)->Name("count_returns/serial")->Arg(1 << 16);
BENCHMARK(BM_CountReturns<true>)->Name("count_returns/omp")->Arg(1 << 16);
BENCHMARK(BM_ExtractFeatures<false>)->Name("extract_features/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractFeatures<true>)->Name("extract_features/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
