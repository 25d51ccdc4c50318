#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ebench/error.hpp"
#include "ebench/graph.hpp"

using namespace ebench;

TEST_CASE("edge lists are validated and normalized") {
  const Graph g = Graph::from_edges(4, {{2, 1}, {0, 3}, {1, 0}});
  CHECK(g.num_edges() == 3);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(g.has_edge(3, 0));
  CHECK_FALSE(g.has_edge(2, 3));
  CHECK(g.degree(0) == 2);
  CHECK(g.max_degree() == 2);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), ContractViolation);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), ContractViolation);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), ContractViolation);
}

TEST_CASE("neighbor masks agree with adjacency") {
  const Graph g = gen_gnp(20, 0.4, 3);
  REQUIRE(g.has_masks());
  for (int v = 0; v < g.n(); ++v) {
    std::uint64_t mask = 0;
    for (int u : g.neighbors(v)) mask |= std::uint64_t{1} << u;
    CHECK(mask == g.mask(v));
  }
  CHECK_FALSE(gen_gnp(70, 0.1, 1).has_masks());
}

TEST_CASE("cut values") {
  const Graph c6 = cycle_graph(6);
  CHECK(cut_value(c6, Partition({0, 1, 0, 1, 0, 1}, 2)) == 6);
  CHECK(cut_value(c6, Partition({0, 0, 0, 1, 1, 1}, 2)) == 2);
  const Graph k33 = complete_bipartite(3, 3);
  CHECK(cut_value(k33, Partition({0, 0, 0, 1, 1, 1}, 2)) == 9);
  CHECK(cut_value(complete_graph(4), Partition({0, 1, 2, 3}, 4)) == 6);
  CHECK_THROWS_AS(cut_value(c6, Partition({0, 1}, 2)), ContractViolation);
}

TEST_CASE("partition complement and canonical form") {
  const Partition p({1, 0, 1}, 2);
  CHECK(p.complement().labels == std::vector<int>{0, 1, 0});
  CHECK(p.canonical().labels == std::vector<int>{0, 1, 0});
  CHECK(p.complement().canonical() == p.canonical());
  CHECK_THROWS_AS(Partition({0, 3}, 3), ContractViolation);
}

TEST_CASE("random generators are seeded and sized") {
  const Graph a = gen_gnm(30, 233, 7);
  CHECK(a.num_edges() == 233);
  CHECK(a == gen_gnm(30, 233, 7));
  CHECK_FALSE(a == gen_gnm(30, 233, 8));
  CHECK(gen_gnm(5, 10, 1) == complete_graph(5));
  CHECK_THROWS_AS(gen_gnm(5, 11, 1), RangeError);
  CHECK(gen_gnp(12, 0.0, 1).num_edges() == 0);
  CHECK(gen_gnp(12, 1.0, 1).num_edges() == 66);
  CHECK(gen_gnp(40, 0.5, 9) == gen_gnp(40, 0.5, 9));
}

TEST_CASE("G(n, 1/2) edge density") {
  double edges = 0;
  for (int s = 0; s < 200; ++s) edges += gen_gnp(20, 0.5, s).num_edges();
  // 190 slots per graph, 38000 Bernoulli(1/2) draws: sd of the mean is about 0.0026.
  CHECK(edges / (200 * 190.0) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("JSON and DIMACS round trips") {
  const Graph g = gen_gnp(15, 0.3, 11);
  CHECK(graph_from_json(to_json(g)) == g);
  CHECK(graph_from_dimacs(to_dimacs(g)) == g);
  CHECK(to_dimacs(Graph::from_edges(3, {{0, 2}})) == "p edge 3 1\ne 1 3\n");
  CHECK_THROWS_AS(graph_from_json("{\"n\": 3}"), IoError);
  CHECK_THROWS_AS(graph_from_dimacs("p edge 3 2\ne 1 2\n"), IoError);

  const auto dir = std::filesystem::temp_directory_path();
  const auto json_path = (dir / "ebench_graph_test.json").string();
  const auto dimacs_path = (dir / "ebench_graph_test.dimacs").string();
  save_graph(g, json_path);
  save_graph(g, dimacs_path);
  CHECK(load_graph(json_path) == g);
  CHECK(load_graph(dimacs_path) == g);
  std::remove(json_path.c_str());
  std::remove(dimacs_path.c_str());
  CHECK_THROWS_AS(load_graph((dir / "no_such_graph.json").string()), IoError);
}
