#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "graphot/advection.hpp"
#include "graphot/error.hpp"
#include "graphot/generators.hpp"
#include "helpers.hpp"

using namespace graphot;

namespace {

std::vector<double> positive_distribution(int n, std::mt19937_64& rng) {
  return test_util::random_distribution(n, rng).vector();
}

}  // namespace

TEST_CASE("zero velocity leaves the distribution in place") {
  Graph g = cycle_graph(5);
  VertexDistribution p0({0.1, 0.2, 0.3, 0.4, 0.0});
  auto traj = advect(g, p0, std::vector<double>(10, 0.0), 2.0, 20);
  REQUIRE(traj.samples.size() == 21);
  CHECK(traj.times.back() == doctest::Approx(2.0));
  for (const auto& s : traj.samples) CHECK(s == p0.vector());
}

TEST_CASE("two-node decay matches the exponential solution") {
  Graph g = line_graph(2);
  auto traj = advect(g, VertexDistribution::point_mass(2, 0), std::vector<double>{1.0, 0.0}, 1.0, 100);
  CHECK(std::abs(traj.samples.back()[0] - std::exp(-1.0)) <= 1e-6);
  CHECK(std::abs(traj.samples.back()[1] - (1.0 - std::exp(-1.0))) <= 1e-6);
}

TEST_CASE("balanced two-node exchange is stationary") {
  Graph g = line_graph(2);
  auto traj = advect(g, VertexDistribution({0.5, 0.5}), std::vector<double>{1.0, 1.0}, 3.0, 50);
  for (const auto& s : traj.samples) {
    CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("advection rejects bad rates and unstable steps") {
  Graph g = line_graph(2);
  auto p0 = VertexDistribution::point_mass(2, 0);
  CHECK_THROWS_AS(advect(g, p0, std::vector<double>{-1.0, 0.0}, 1.0, 10), ValidationError);
  CHECK_THROWS_AS(advect(g, p0, std::vector<double>{NAN, 0.0}, 1.0, 10), ValidationError);
  CHECK_THROWS_AS(advect(g, p0, std::vector<double>{1.0, 0.0}, 1.0, 1), StabilityError);
  CHECK_THROWS_AS(advect(g, p0, std::vector<double>{1.0}, 1.0, 10), ShapeError);
}

TEST_CASE("time-varying rates are piecewise constant per step") {
  Graph g = line_graph(2);
  auto p0 = VertexDistribution::point_mass(2, 0);
  std::vector<FlowField> rates(10, FlowField{1.0, 0.0});
  auto varying = advect(g, p0, rates, 1.0);
  auto fixed = advect(g, p0, std::vector<double>{1.0, 0.0}, 1.0, 10);
  CHECK(varying.samples.back() == fixed.samples.back());
}

TEST_CASE("mass is conserved and stays nonnegative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + uniform_int(rng, 15);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 300 + trial);
    auto p0 = test_util::random_distribution(n, rng, 0.5);
    auto rates = test_util::random_vector(g.num_oriented_edges(), rng, 0.0, 2.0);
    double umax = *std::max_element(rates.begin(), rates.end());
    int steps = static_cast<int>(std::ceil(umax * 1.5 * g.max_degree() / 0.5)) + 1;
    auto traj = advect(g, p0, rates, 1.5, steps);
    for (const auto& s : traj.samples) {
      CHECK(std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) <= 1e-12);
      CHECK(*std::min_element(s.begin(), s.end()) >= -1e-9);
    }
  }
}

TEST_CASE("inner product examples") {
  Graph g = line_graph(2);
  std::vector<double> half{0.5, 0.5}, u{1.0, 0.0}, zero{0.0, 0.0};
  CHECK(advective_inner_product(g, half, u, u) == doctest::Approx(0.5));
  CHECK(advective_inner_product(g, half, zero, u) == 0.0);
  CHECK(advective_inner_product(g, std::vector<double>{0.75, 0.25}, u, u) == doctest::Approx(1.5));
  CHECK(advective_norm(g, half, zero) == 0.0);
  CHECK(advective_norm(g, half, u) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(advective_inner_product(g, std::vector<double>{1.0, 0.0}, u, u), DomainError);
}

TEST_CASE("inner product axioms") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + uniform_int(rng, 19);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 500 + trial);
    auto p = positive_distribution(n, rng);
    const auto m2 = static_cast<std::size_t>(g.num_oriented_edges());
    auto u = test_util::random_vector(m2, rng, -1.0, 1.0);
    auto w = test_util::random_vector(m2, rng, -1.0, 1.0);
    auto x = test_util::random_vector(m2, rng, -1.0, 1.0);
    double a = uniform01(rng) * 4.0 - 2.0;
    double uw = advective_inner_product(g, p, u, w);
    CHECK(uw == doctest::Approx(advective_inner_product(g, p, w, u)).epsilon(1e-12));
    std::vector<double> combo(m2);
    for (std::size_t r = 0; r < m2; ++r) combo[r] = a * u[r] + x[r];
    CHECK(advective_inner_product(g, p, combo, w) ==
          doctest::Approx(a * uw + advective_inner_product(g, p, x, w)).epsilon(1e-10).scale(1.0));
    CHECK(advective_inner_product(g, p, u, u) > 0.0);
    std::vector<double> twice(m2);
    for (std::size_t r = 0; r < m2; ++r) twice[r] = 2.0 * u[r];
    CHECK(advective_norm(g, p, twice) == doctest::Approx(2.0 * advective_norm(g, p, u)).epsilon(1e-12));
  }
}

TEST_CASE("momentum energy examples") {
  Graph g = line_graph(2);
  std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
  CHECK(momentum_norm_squared(g, a, b, std::vector<double>{1.0, 0.0}) == 1.0);
  CHECK(momentum_norm_squared(g, a, b, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(momentum_norm_squared(g, a, b, std::vector<double>{0.0, 1.0}), InfeasibleFlow);
}

TEST_CASE("momentum energy equals the advective norm under J = p U") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + uniform_int(rng, 12);
    Graph g = random_connected_graph(n, uniform_int(rng, n), 700 + trial);
    auto p = positive_distribution(n, rng);
    auto u = test_util::random_vector(g.num_oriented_edges(), rng);
    std::vector<double> j(u.size());
    for (int r = 0; r < g.num_oriented_edges(); ++r) j[r] = p[g.oriented_edge(r).tail] * u[r];
    double lhs = momentum_norm_squared(g, p, p, j);
    double rhs = std::pow(advective_norm(g, p, u), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
  }
}

TEST_CASE("trajectory CSV layout") {
  Graph g = line_graph(2);
  auto traj = advect(g, VertexDistribution::point_mass(2, 0), std::vector<double>{0.0, 0.0}, 1.0, 2);
  CHECK(trajectory_csv(traj, 3) == "t,v0,v1\n0.000,1.000,0.000\n0.500,1.000,0.000\n1.000,1.000,0.000\n");
}
