#include <doctest.h>

#include <algorithm>
#include <random>

#include "graphot/baselines.hpp"
#include "graphot/error.hpp"
#include "graphot/flow_solver.hpp"
#include "graphot/generators.hpp"
#include "graphot/pruning.hpp"
#include "helpers.hpp"

using namespace graphot;

TEST_CASE("path graph at radius zero keeps exactly the path") {
  Graph g = line_graph(5);
  auto pruned = prune_by_w1(g, VertexDistribution::point_mass(5, 0), VertexDistribution::point_mass(5, 4), 0);
  CHECK(pruned.graph.num_vertices() == 5);
  CHECK(pruned.graph.num_edges() == 4);
}

TEST_CASE("star graph at radius zero keeps the two spokes") {
  Graph g = star_graph(5);
  auto pruned = prune_by_w1(g, VertexDistribution::point_mass(6, 2), VertexDistribution::point_mass(6, 4), 0);
  CHECK(pruned.graph.num_edges() == 2);
  CHECK(pruned.new_to_old.size() == 3);
  CHECK(pruned.old_to_new[0] >= 0);
  CHECK(pruned.old_to_new[1] == -1);
  std::vector<int> kept;
  for (int e : pruned.edge_new_to_old) kept.push_back(e);
  std::sort(kept.begin(), kept.end());
  CHECK(kept == std::vector<int>{1, 3});
}

TEST_CASE("identical endpoints keep only the support") {
  Graph g = cycle_graph(6);
  VertexDistribution p({0.5, 0.5, 0.0, 0.0, 0.0, 0.0});
  auto pruned = prune_by_w1(g, p, p, 0);
  CHECK(pruned.graph.num_vertices() == 2);
  CHECK(distance(pruned.graph, pruned.restrict(p), pruned.restrict(p), 4) == 0.0);
}

TEST_CASE("large radius is the identity") {
  Graph g = random_connected_graph(15, 10, 5);
  DistanceMatrix d(g);
  auto pruned = prune_by_w1(g, VertexDistribution::point_mass(15, 0), VertexDistribution::point_mass(15, 7),
                            d.diameter());
  CHECK(pruned.graph.num_vertices() == 15);
  CHECK(pruned.graph.num_edges() == g.num_edges());
}

TEST_CASE("restrict and lift") {
  Graph g = line_graph(6);
  auto pruned = prune_by_w1(g, VertexDistribution::point_mass(6, 1), VertexDistribution::point_mass(6, 3), 0);
  CHECK_THROWS_AS(pruned.restrict(VertexDistribution::point_mass(6, 5)), ValidationError);
  auto r = pruned.restrict(VertexDistribution::point_mass(6, 3));
  auto lifted = pruned.lift(r.values());
  CHECK(lifted == VertexDistribution::point_mass(6, 3).vector());
  CHECK(index_map_text(pruned) == "1 0\n2 1\n3 2\n");
}

TEST_CASE("pruned distance never beats the full graph") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 6 + uniform_int(rng, 10);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 1200 + trial);
    auto p0 = test_util::random_distribution(n, rng, 0.6), p1 = test_util::random_distribution(n, rng, 0.6);
    auto pruned = prune_by_w1(g, p0, p1, 1);
    double full = distance(g, p0, p1, 8);
    double sub = distance(pruned.graph, pruned.restrict(p0), pruned.restrict(p1), 8);
    CHECK(sub >= full - 1e-3);
  }
}
