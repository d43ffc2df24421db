#pragma once

#include <vector>

namespace graphot::detail {

/// Dinic max-flow on real capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);
  void add_arc(int from, int to, double capacity);
  double solve(int source, int sink);

  /// After solve(): arcs as added are even ids, their reverses odd ids.
  int num_nodes() const { return n_; }
  const std::vector<int>& arcs_from(int v) const { return adj_[v]; }
  int arc_head(int a) const { return arcs_[a].to; }
  double residual(int a) const { return arcs_[a].cap; }
  /// Flow on an added arc (even id).
  double flow(int a) const { return arcs_[a ^ 1].cap; }

 private:
  struct Arc {
    int to;
    double cap;
  };
  bool bfs(int s, int t);
  double dfs(int v, int t, double pushed);

  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_, next_;
};

}  // namespace graphot::detail
