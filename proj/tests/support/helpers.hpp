#pragma once

#include <random>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/generators.hpp"

namespace test_util {

inline graphot::VertexDistribution random_distribution(int n, std::mt19937_64& rng, double zero_prob = 0.0) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = graphot::uniform01(rng) < zero_prob ? 0.0 : graphot::uniform01(rng) + 1e-3;
  double total = 0.0;
  for (double x : w) total += x;
  if (total == 0.0) w[0] = 1.0;
  return graphot::VertexDistribution::from_weights(w);
}

inline std::vector<double> random_vector(std::size_t size, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::vector<double> v(size);
  for (auto& x : v) x = lo + (hi - lo) * graphot::uniform01(rng);
  return v;
}

}  // namespace test_util
