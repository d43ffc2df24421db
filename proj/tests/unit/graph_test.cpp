#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "graphot/distribution.hpp"
#include "graphot/error.hpp"
#include "graphot/generators.hpp"
#include "graphot/graph.hpp"
#include "graphot/io.hpp"
#include "graphot/log.hpp"
#include "helpers.hpp"

using namespace graphot;

TEST_CASE("smallest graph has both orientations of its edge") {
  Graph g = parse_graph("2 1\n0 1\n");
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.num_oriented_edges() == 2);
  CHECK(g.oriented_edge(0) == OrientedEdge{0, 1});
  CHECK(g.oriented_edge(1) == OrientedEdge{1, 0});
}

TEST_CASE("path graph from text") {
  Graph g = parse_graph("# P3\n3 2\n0 1\n\n1 2\n");
  CHECK(g.num_edges() == 2);
  CHECK(g.edge(1) == Edge{1, 2});
}

TEST_CASE("invalid graph documents are rejected") {
  CHECK_THROWS_AS(parse_graph("3 3\n0 1\n1 2\n0 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph("3 3\n0 1\n1 2\n1 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph("2 1\n1 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_graph("3 1\n0 1\n"), ConnectivityError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 2\n"), FormatError);
  CHECK_THROWS_AS(parse_graph("2 2\n0 1\n"), FormatError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 x\n"), FormatError);
  CHECK_THROWS_AS(parse_graph(""), FormatError);
}

TEST_CASE("format errors carry line numbers") {
  try {
    parse_graph("2 1\n\n0 x\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("shortest path examples") {
  CHECK(shortest_path_distances(line_graph(3), 0) == std::vector<int>{0, 1, 2});
  CHECK(shortest_path_distances(cycle_graph(4), 0) == std::vector<int>{0, 1, 2, 1});
  Graph g = random_connected_graph(12, 6, 3);
  for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(shortest_path_distances(g, v)[v] == 0);
}

TEST_CASE("shortest paths agree with Floyd-Warshall") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + uniform_int(rng, 8);
    int max_extra = n * (n - 1) / 2 - (n - 1);
    Graph g = random_connected_graph(n, max_extra ? uniform_int(rng, max_extra + 1) : 0, 100 + trial);
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (auto e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
    DistanceMatrix dm(g);
    for (int v = 0; v < n; ++v) {
      CHECK(shortest_path_distances(g, v) == d[v]);
      for (int w = 0; w < n; ++w) CHECK(dm(v, w) == d[v][w]);
    }
  }
}

TEST_CASE("divergence examples") {
  Graph two = line_graph(2);
  CHECK(two.divergence(std::vector<double>{1.0, 0.0}) == std::vector<double>{-1.0, 1.0});
  Graph p3 = line_graph(3);
  CHECK(p3.divergence(std::vector<double>{1.0, 0.0, 1.0, 0.0}) == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(p3.divergence(std::vector<double>(4, 0.0)) == std::vector<double>(3, 0.0));
  CHECK_THROWS_AS(p3.divergence(std::vector<double>(3, 0.0)), ShapeError);
}

TEST_CASE("gradient is antisymmetric and the divergence sums to zero") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + uniform_int(rng, 29);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 200 + trial);
    auto p = test_util::random_vector(n, rng);
    auto grad = g.gradient(p);
    for (int r = 0; r < g.num_oriented_edges(); ++r) {
      auto e = g.oriented_edge(r);
      CHECK(grad[r] == p[e.head] - p[e.tail]);
      CHECK(grad[r] == -grad[Graph::reverse(r)]);
    }
    for (int f = 0; f < 5; ++f) {
      auto flow = test_util::random_vector(g.num_oriented_edges(), rng);
      auto div = g.divergence(flow);
      CHECK(std::abs(std::accumulate(div.begin(), div.end(), 0.0)) <= 1e-12);
    }
    // Incidence matrix agrees with the matrix-free operators.
    auto d = g.incidence_matrix();
    Eigen::VectorXd pv = Eigen::Map<Eigen::VectorXd>(p.data(), n);
    Eigen::VectorXd dp = d * pv;
    for (int r = 0; r < g.num_oriented_edges(); ++r) CHECK(dp[r] == doctest::Approx(grad[r]));
  }
}

TEST_CASE("graph text round trip is the identity on canonical form") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_connected_graph(15, 10, seed);
    std::string text = format_graph(g);
    Graph h = parse_graph(text);
    CHECK(format_graph(h) == text);
    CHECK(h.num_edges() == g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) CHECK(h.edge(e) == g.edge(e));
  }
}

TEST_CASE("entropy examples") {
  CHECK(entropy(VertexDistribution::point_mass(5, 2)) == 0.0);
  CHECK(entropy(VertexDistribution::uniform(30)) == doctest::Approx(std::log(30.0)).epsilon(1e-12));
  CHECK(entropy(VertexDistribution({0.5, 0.5})) == doctest::Approx(0.693147180559945));
}

TEST_CASE("distribution validation and renormalization") {
  CHECK_THROWS_AS(VertexDistribution({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(VertexDistribution({1.5, -0.5}), ValidationError);
  CHECK_THROWS_AS(VertexDistribution({NAN, 1.0}), ValidationError);
  CHECK_THROWS_AS(VertexDistribution::from_weights({0.0, 0.0}), ValidationError);

  int warnings = 0;
  auto old = set_warning_handler([&](std::string_view) { ++warnings; });
  VertexDistribution p({0.50003, 0.5});
  set_warning_handler(old);
  CHECK(warnings == 1);
  CHECK(std::abs(p[0] + p[1] - 1.0) <= 1e-9);

  auto q = VertexDistribution::from_weights({1.0, 3.0});
  CHECK(q[1] == 0.75);
  CHECK(q.support() == std::vector<Vertex>{0, 1});
  CHECK(VertexDistribution::point_mass(3, 1).support() == std::vector<Vertex>{1});
  CHECK_THROWS_AS(check_on_graph(line_graph(3), q), ShapeError);
}

TEST_CASE("distribution and flow files") {
  Graph g = line_graph(3);
  auto p = parse_distribution("# mass\n0.25\n0.25\n0.5\n", 3);
  CHECK(p[2] == 0.5);
  CHECK_THROWS_AS(parse_distribution("0.5\n0.5\n", 3), FormatError);
  auto flow = parse_flow("1\n0\n0.5\n0\n", g);
  CHECK(flow[2] == 0.5);
  CHECK_THROWS_AS(parse_flow("1\n0\n", g), FormatError);
  auto values = parse_values(format_values(std::vector<double>{0.1, 1.0 / 3.0, 2e-300}));
  CHECK(values[1] == 1.0 / 3.0);
  CHECK(values[2] == 2e-300);
}

TEST_CASE("number formatting") {
  CHECK(format_fixed(1.0) == "1.000000");
  CHECK(format_fixed(-1e-9) == "0.000000");
  CHECK(format_fixed(2.5, 2) == "2.50");
  CHECK(format_fixed(INFINITY) == "inf");
  CHECK(format_exact(0.1) == "0.1");
  CHECK(std::stod(format_exact(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("generators") {
  Graph fan = fan_line_graph(30, 60);
  CHECK(fan.num_vertices() == 120);
  CHECK(fan.num_edges() == 119);
  for (int s : {1, 3, 7})
    for (int len : {2, 5, 11}) CHECK(fan_line_graph(s, len).num_edges() == fan_line_graph(s, len).num_vertices() - 1);
  CHECK(star_graph(5).degree(0) == 5);
  CHECK(cycle_graph(6).num_edges() == 6);
  auto geo = geometric_graph(200, 700, 3);
  CHECK(geo.graph.num_edges() == 700);
  CHECK(geo.points.size() == 200);
  // Seeded generators are reproducible.
  CHECK(format_graph(random_connected_graph(20, 15, 9)) == format_graph(random_connected_graph(20, 15, 9)));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    double u = uniform01(rng);
    CHECK((u >= 0.0 && u < 1.0));
  }
}
