#pragma once

#include <string>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

/// Minimum-cost flow on the oriented edges with unit costs: D^T J = p1 - p0.
struct BeckmannFlow {
  FlowField flow;  // canonical oriented-edge order, >= 0
  double cost = 0.0;
};

/// 1-Wasserstein distance with hop-count ground distance, via successive
/// shortest paths. Exact up to float round-off in the supplies.
BeckmannFlow w1(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1);

struct PlanEntry {
  Vertex v;
  Vertex w;
  double mass;
};

/// Sparse coupling with marginals p0 (rows) and p1 (columns).
struct TransportPlan {
  int n = 0;
  std::vector<PlanEntry> entries;  // sorted by (v, w), mass > 0
  double at(Vertex v, Vertex w) const;
  std::vector<double> row_sums() const;
  std::vector<double> column_sums() const;
};

struct FullTransport {
  double distance = 0.0;  // sqrt of the optimal cost
  double cost = 0.0;      // sum d(v,w)^2 T(v,w)
  TransportPlan plan;
};

constexpr int kDefaultFullTransportLimit = 2000;

/// Quadratic transportation distance: min sum d(v,w)^2 T(v,w) over couplings,
/// solved exactly by a transportation simplex on the supports. Throws
/// SizeLimitError when n exceeds `max_vertices`.
FullTransport w_full(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                     int max_vertices = kDefaultFullTransportLimit);

/// (sum |p0 - p1|^order)^(1/order); order >= 1.
double lp_norm_distance(const VertexDistribution& p0, const VertexDistribution& p1, double order = 1.0);

/// Header "v,w,T" then one row per entry above 1e-12.
std::string plan_csv(const TransportPlan& plan, int precision = 17);

}  // namespace graphot
