#include "min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace graphot::detail {

namespace {

constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();
constexpr double kDust = 1e-15;

}  // namespace

MinCostFlow::MinCostFlow(int num_nodes) : n_(num_nodes), adj_(static_cast<std::size_t>(num_nodes) + 2) {}

int MinCostFlow::add_arc(int from, int to, int cost) {
  int id = static_cast<int>(arcs_.size()) / 2;
  adj_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, cost, kInfiniteCapacity, 0.0});
  adj_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, -cost, 0.0, 0.0});
  return id;
}

double MinCostFlow::solve(const std::vector<double>& supply) {
  // Super source n_ and super sink n_+1 with zero-cost arcs.
  const int s = n_, t = n_ + 1, total = n_ + 2;
  const std::size_t user_arcs = arcs_.size();
  for (int v = 0; v < n_; ++v) {
    if (supply[v] > 0.0) {
      add_arc(s, v, 0);
      arcs_[arcs_.size() - 2].cap = supply[v];
    } else if (supply[v] < 0.0) {
      add_arc(v, t, 0);
      arcs_[arcs_.size() - 2].cap = -supply[v];
    }
  }

  std::vector<long long> potential(static_cast<std::size_t>(total), 0);
  std::vector<long long> dist(static_cast<std::size_t>(total));
  std::vector<int> via(static_cast<std::size_t>(total));
  const long long unreached = std::numeric_limits<long long>::max();
  auto residual = [&](int a) { return arcs_[a].cap - arcs_[a].flow; };
  double cost = 0.0;
  for (;;) {
    std::fill(dist.begin(), dist.end(), unreached);
    std::fill(via.begin(), via.end(), -1);
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.push({0, s});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[v]) continue;
      for (int a : adj_[v]) {
        if (residual(a) <= kDust) continue;
        int w = arcs_[a].to;
        long long nd = d + arcs_[a].cost + potential[v] - potential[w];
        if (nd < dist[w]) {
          dist[w] = nd;
          via[w] = a;
          heap.push({nd, w});
        }
      }
    }
    if (dist[t] == unreached) break;
    // Capping at dist[t] keeps reduced costs nonnegative for nodes the
    // search did not settle.
    for (int v = 0; v < total; ++v) potential[v] += std::min(dist[v], dist[t]);

    double push = kInfiniteCapacity;
    for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, residual(via[v]));
    if (push <= kDust) break;
    for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
      int a = via[v];
      arcs_[a].flow += push;
      arcs_[a ^ 1].flow -= push;
      cost += push * arcs_[a].cost;
    }
  }
  // Residual twins carry negative flow; fold back so forward flow is net.
  for (std::size_t a = 0; a < user_arcs; a += 2) arcs_[a].flow = std::max(0.0, arcs_[a].flow);
  arcs_.resize(user_arcs);
  for (auto& list : adj_)
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](int a) { return a >= static_cast<int>(user_arcs); }),
               list.end());
  return cost;
}

}  // namespace graphot::detail
