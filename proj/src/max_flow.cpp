#include "max_flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace graphot::detail {

namespace {
constexpr double kDust = 1e-15;
}

MaxFlow::MaxFlow(int num_nodes) : n_(num_nodes), adj_(static_cast<std::size_t>(num_nodes)) {}

void MaxFlow::add_arc(int from, int to, double capacity) {
  adj_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, capacity});
  adj_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0.0});
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(static_cast<std::size_t>(n_), -1);
  std::deque<int> queue{s};
  level_[s] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int a : adj_[v]) {
      const Arc& arc = arcs_[a];
      if (arc.cap > kDust && level_[arc.to] < 0) {
        level_[arc.to] = level_[v] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[t] >= 0;
}

double MaxFlow::dfs(int v, int t, double pushed) {
  if (v == t) return pushed;
  for (int& i = next_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
    int a = adj_[v][i];
    Arc& arc = arcs_[a];
    if (arc.cap <= kDust || level_[arc.to] != level_[v] + 1) continue;
    double got = dfs(arc.to, t, std::min(pushed, arc.cap));
    if (got > 0.0) {
      arc.cap -= got;
      arcs_[a ^ 1].cap += got;
      return got;
    }
  }
  return 0.0;
}

double MaxFlow::solve(int source, int sink) {
  double total = 0.0;
  while (bfs(source, sink)) {
    next_.assign(static_cast<std::size_t>(n_), 0);
    while (double f = dfs(source, sink, std::numeric_limits<double>::infinity())) total += f;
  }
  return total;
}

}  // namespace graphot::detail
