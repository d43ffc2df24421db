#include <doctest.h>

#include <cmath>
#include <random>

#include "transport_oracles.hpp"
#include "graphot/baselines.hpp"
#include "graphot/error.hpp"
#include "graphot/generators.hpp"
#include "helpers.hpp"

using namespace graphot;

using test_lp::w1_by_lp;
using test_lp::w_full_cost_by_lp;

TEST_CASE("dense LP oracle sanity") {
  // min x + 2y, x + y = 1 -> 1.
  auto r = test_lp::minimize({{1.0, 1.0}}, {1.0}, {1.0, 2.0});
  CHECK(r.value == doctest::Approx(1.0));
  CHECK_THROWS(test_lp::minimize({{1.0, 1.0}}, {-1.0}, {1.0, 1.0}));
}

TEST_CASE("w1 examples") {
  Graph p3 = line_graph(3);
  VertexDistribution p({0.5, 0.5, 0.0}), q({0.0, 0.5, 0.5});
  CHECK(w1(p3, p, q).cost == doctest::Approx(1.0).epsilon(1e-12));
  auto same = w1(p3, p, p);
  CHECK(same.cost == 0.0);
  for (double j : same.flow) CHECK(j == 0.0);
}

TEST_CASE("w1 on indicators is the hop distance") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = random_connected_graph(12, 8, seed);
    DistanceMatrix d(g);
    for (Vertex v = 0; v < 12; v += 3)
      for (Vertex w = 0; w < 12; ++w) {
        auto r = w1(g, VertexDistribution::point_mass(12, v), VertexDistribution::point_mass(12, w));
        CHECK(r.cost == d(v, w));
        auto full = w_full(g, VertexDistribution::point_mass(12, v), VertexDistribution::point_mass(12, w));
        CHECK(full.distance == d(v, w));
        CHECK(full.plan.at(v, w) == 1.0);
      }
  }
}

TEST_CASE("w1 flow is feasible and matches the LP oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + uniform_int(rng, 7);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 900 + trial);
    auto p0 = test_util::random_distribution(n, rng, 0.3), p1 = test_util::random_distribution(n, rng, 0.3);
    auto r = w1(g, p0, p1);
    CHECK(std::abs(r.cost - w1_by_lp(g, p0, p1)) <= 1e-8);
    auto div = g.divergence(r.flow);
    double total = 0.0;
    for (int v = 0; v < n; ++v) CHECK(std::abs(div[v] - (p1[v] - p0[v])) <= 1e-12);
    for (double j : r.flow) {
      CHECK(j >= 0.0);
      total += j;
    }
    CHECK(total == doctest::Approx(r.cost));
  }
}

TEST_CASE("w_full matches the LP oracle") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected_graph(5, uniform_int(rng, 4), 1000 + trial);
    auto p0 = test_util::random_distribution(5, rng, 0.3), p1 = test_util::random_distribution(5, rng, 0.3);
    auto r = w_full(g, p0, p1);
    CHECK(std::abs(r.cost - w_full_cost_by_lp(g, p0, p1)) <= 1e-8);
    CHECK(r.distance == doctest::Approx(std::sqrt(r.cost)));
    auto rows = r.plan.row_sums(), cols = r.plan.column_sums();
    for (int v = 0; v < 5; ++v) {
      CHECK(std::abs(rows[v] - p0[v]) <= 1e-12);
      CHECK(std::abs(cols[v] - p1[v]) <= 1e-12);
    }
  }
}

TEST_CASE("w_full identical inputs give the diagonal plan") {
  Graph g = cycle_graph(6);
  VertexDistribution p({0.1, 0.2, 0.3, 0.0, 0.25, 0.15});
  auto r = w_full(g, p, p);
  CHECK(r.cost == 0.0);
  for (const auto& e : r.plan.entries) {
    CHECK(e.v == e.w);
    CHECK(e.mass == p[e.v]);
  }
  CHECK_THROWS_AS(w_full(line_graph(30), VertexDistribution::uniform(30), VertexDistribution::uniform(30), 20),
                  SizeLimitError);
}

TEST_CASE("w1 is a metric") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + uniform_int(rng, 10);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 1100 + trial);
    auto p = test_util::random_distribution(n, rng, 0.3), q = test_util::random_distribution(n, rng, 0.3),
         r = test_util::random_distribution(n, rng, 0.3);
    double pq = w1(g, p, q).cost;
    CHECK(std::abs(pq - w1(g, q, p).cost) <= 1e-12);
    CHECK(w1(g, p, r).cost <= pq + w1(g, q, r).cost + 1e-12);
  }
}

TEST_CASE("w1 is invariant under cycle rotations") {
  std::mt19937_64 rng(24);
  Graph g = cycle_graph(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = test_util::random_distribution(9, rng), q = test_util::random_distribution(9, rng);
    int shift = 1 + uniform_int(rng, 8);
    std::vector<double> ps(9), qs(9), pr(9), qr(9);
    for (int v = 0; v < 9; ++v) {
      ps[(v + shift) % 9] = p[v];
      qs[(v + shift) % 9] = q[v];
      pr[(9 - v) % 9] = p[v];
      qr[(9 - v) % 9] = q[v];
    }
    double base = w1(g, p, q).cost;
    CHECK(w1(g, VertexDistribution(ps), VertexDistribution(qs)).cost == doctest::Approx(base).epsilon(1e-12));
    CHECK(w1(g, VertexDistribution(pr), VertexDistribution(qr)).cost == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("lp norm examples") {
  auto a = VertexDistribution::point_mass(2, 0), b = VertexDistribution::point_mass(2, 1);
  CHECK(lp_norm_distance(a, a) == 0.0);
  CHECK(lp_norm_distance(a, b) == 2.0);
  CHECK(lp_norm_distance(VertexDistribution({0.5, 0.5}), a) == 1.0);
  CHECK(lp_norm_distance(a, b, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(lp_norm_distance(a, b, 0.5), ValidationError);
}

TEST_CASE("plan CSV") {
  Graph p3 = line_graph(3);
  auto r = w_full(p3, VertexDistribution::point_mass(3, 0), VertexDistribution({0.0, 0.5, 0.5}));
  CHECK(plan_csv(r.plan, 3) == "v,w,T\n0,1,0.500\n0,2,0.500\n");
}
