#pragma once

#include <vector>

namespace graphot::detail {

/// Successive shortest paths for uncapacitated arcs with nonnegative integer
/// costs and real supplies. Dijkstra on reduced costs keeps labels exact.
class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes);
  /// Adds an arc and returns its id.
  int add_arc(int from, int to, int cost);
  /// supply[v] > 0 is a source, < 0 a sink; entries must sum to ~0.
  /// Returns the total cost.
  double solve(const std::vector<double>& supply);
  double flow(int arc) const { return arcs_[static_cast<std::size_t>(2 * arc)].flow; }

 private:
  struct Arc {
    int to;
    int cost;
    double cap;
    double flow;
  };
  int n_;
  std::vector<Arc> arcs_;  // arc 2a forward, 2a+1 residual twin
  std::vector<std::vector<int>> adj_;
};

}  // namespace graphot::detail
