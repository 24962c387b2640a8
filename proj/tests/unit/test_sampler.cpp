#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "hosm/errors.hpp"
#include "hosm/parallel.hpp"
#include "hosm/sampler.hpp"
#include "oracles.hpp"

using namespace hosm;

namespace {

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_hyperedges(in);
}

}  // namespace

TEST_CASE("target size one gives one node") {
  const auto g = parse("1 2\n2 3 4\n");
  const auto res = rw_sample(g, {.target_size = 1, .seed = 9});
  CHECK(res.nodes.size() == 1);
  CHECK_FALSE(res.exhausted);
}

TEST_CASE("triangle hypergraph is sampled whole") {
  const auto g = parse("0 1\n1 2\n0 2\n");
  const auto res = rw_sample(g, {.target_size = 3, .seed = 1});
  CHECK(res.nodes == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("sampling is deterministic in the seed") {
  Rng rng(2);
  const auto g = testing::random_hypergraph(rng, 60, 4, 90);
  const SampleSpec spec{.target_size = 20, .seed = 77, .restart_probability = 0.1};
  const auto a = rw_sample(g, spec);
  const auto b = rw_sample(g, spec);
  CHECK(a.nodes == b.nodes);
  CHECK(a.steps == b.steps);
  CHECK(std::is_sorted(a.nodes.begin(), a.nodes.end()));
}

TEST_CASE("sampler input errors") {
  CHECK_THROWS_AS(rw_sample(parse("1\n2\n"), {.target_size = 1}), UnsupportedInput);
  CHECK_THROWS_AS(rw_sample(parse("1 2\n"), {.target_size = 3}), DomainError);
  CHECK_THROWS_AS(rw_sample(parse("1 2\n"), {.target_size = 0}), DomainError);
  CHECK_THROWS_AS(rw_sample(parse("1 2\n"), {.target_size = 2, .restart_probability = 1.0}), DomainError);
  CHECK_THROWS_AS(rw_sample(parse("1 2\n"), {.target_size = 2, .max_steps = 1}), DomainError);
}

TEST_CASE("walk crosses disconnected components through dead-end restarts") {
  const auto g = parse("0 1\n2 3\n4\n");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto res = rw_sample(g, {.target_size = 5, .seed = seed, .restart_probability = 0.2});
    CHECK(res.nodes.size() == 5);
    // Without restarts a walk caught in a two-node component can only end by the cap.
    const auto trapped = rw_sample(g, {.target_size = 5, .seed = seed});
    CHECK((trapped.nodes.size() == 5 || trapped.exhausted));
  }
}

TEST_CASE("step cap flags exhaustion") {
  const auto g = parse("0 1\n2 3\n4 5\n6 7\n");
  const auto res = rw_sample(g, {.target_size = 8, .seed = 1, .max_steps = 8});
  CHECK(res.steps <= 8);
  if (res.nodes.size() < 8) CHECK(res.exhausted);
}

TEST_CASE("induced subgraph examples") {
  const auto g = parse("1 2 3\n3 4\n");  // dense ids 0 1 2 | 2 3
  const VertexId first[] = {0, 1, 2};
  const auto a = induced_subgraph(g, first);
  CHECK(a.graph.edge_count() == 1);
  CHECK(a.graph.edges()[0].order() == 3);
  const VertexId second[] = {0, 3};
  const auto b = induced_subgraph(g, second);
  CHECK(b.graph.edge_count() == 0);
  CHECK(b.graph.vertex_count() == 2);
}

TEST_CASE("induced subgraph equals brute-force subset scan") {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const auto g = testing::random_hypergraph(rng, 12, 4, 30);
    std::vector<VertexId> nodes;
    for (VertexId v = 0; v < 12; ++v)
      if (rng.below(2)) nodes.push_back(v);
    const auto sub = induced_subgraph(g, nodes);
    std::set<std::vector<VertexId>> expected, got;
    for (const auto& e : g.edges())
      if (std::all_of(e.vertices().begin(), e.vertices().end(),
                      [&](VertexId v) { return std::binary_search(nodes.begin(), nodes.end(), v); }))
        expected.insert({e.vertices().begin(), e.vertices().end()});
    for (const auto& e : sub.graph.edges()) {
      std::vector<VertexId> back;
      for (auto v : e.vertices()) back.push_back(sub.to_parent[v]);
      std::sort(back.begin(), back.end());
      got.insert(back);
    }
    CHECK(got == expected);
    CHECK(sub.to_parent == nodes);
  }
}

TEST_CASE("batch sampling is schedule independent") {
  Rng rng(21);
  const auto g = testing::random_hypergraph(rng, 300, 4, 600);
  const SampleBatchSpec spec{.count = 24, .size_min = 10, .size_max = 40, .seed = 5};
  const auto serial_out = serial::sample_many(g, spec);
  const int saved = max_threads();
  for (int threads : {1, 2, 4}) {
    set_threads(threads);
    const auto par = sample_many(g, spec);
    REQUIRE(par.size() == serial_out.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].seed == serial_out[i].seed);
      CHECK(par[i].target_size == serial_out[i].target_size);
      CHECK(par[i].sample.nodes == serial_out[i].sample.nodes);
      CHECK(to_canonical_string(par[i].induced.graph) == to_canonical_string(serial_out[i].induced.graph));
    }
  }
  set_threads(saved);
  for (const auto& s : serial_out) {
    CHECK(s.target_size >= 10);
    CHECK(s.target_size <= 40);
  }
}
