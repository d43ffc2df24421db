#include "graphot/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "graphot/error.hpp"

namespace graphot {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_int(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

Graph line_graph(int n) {
  if (n < 1) throw ValidationError("line graph needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw ValidationError("cycle graph needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  if (leaves < 1) throw ValidationError("star graph needs at least one leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

Graph fan_line_graph(int spokes, int line_length) {
  if (spokes < 1 || line_length < 1) throw ValidationError("fan-line needs s >= 1 and L >= 1");
  if (line_length == 1) throw ValidationError("fan-line needs L >= 2 so the two hubs differ");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < line_length; ++i) edges.push_back({i, i + 1});
  int next = line_length;
  for (int hub : {0, line_length - 1})
    for (int j = 0; j < spokes; ++j) edges.push_back({hub, next++});
  return Graph(next, std::move(edges));
}

Graph random_connected_graph(int n, int extra_edges, std::uint64_t seed) {
  if (n < 1) throw ValidationError("graph needs n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_int(rng, i + 1)]);
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    int a = order[i], b = order[uniform_int(rng, i)];
    seen.insert({std::min(a, b), std::max(a, b)});
    edges.push_back({a, b});
  }
  const long possible = static_cast<long>(n) * (n - 1) / 2;
  extra_edges = static_cast<int>(std::min<long>(extra_edges, possible - (n - 1)));
  while (extra_edges > 0) {
    int a = uniform_int(rng, n), b = uniform_int(rng, n);
    if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second) continue;
    edges.push_back({a, b});
    --extra_edges;
  }
  return Graph(n, std::move(edges));
}

GeometricGraph geometric_graph(int n, int edges, std::uint64_t seed) {
  if (n < 2) throw ValidationError("geometric graph needs n >= 2");
  std::mt19937_64 rng(seed);
  GeometricGraph out{Graph(1, {}), {}};
  out.points.resize(static_cast<std::size_t>(n));
  for (auto& p : out.points) p = {uniform01(rng), uniform01(rng)};
  auto dist2 = [&](int a, int b) {
    double dx = out.points[a][0] - out.points[b][0], dy = out.points[a][1] - out.points[b][1];
    return dx * dx + dy * dy;
  };

  // Prim's MST on the complete graph.
  std::set<std::pair<int, int>> chosen;
  std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<int> from(static_cast<std::size_t>(n), -1);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  best[0] = 0.0;
  for (int it = 0; it < n; ++it) {
    int v = -1;
    for (int u = 0; u < n; ++u)
      if (!in[u] && (v < 0 || best[u] < best[v])) v = u;
    in[v] = 1;
    if (from[v] >= 0) chosen.insert({std::min(v, from[v]), std::max(v, from[v])});
    for (int u = 0; u < n; ++u)
      if (!in[u] && dist2(u, v) < best[u]) {
        best[u] = dist2(u, v);
        from[u] = v;
      }
  }

  std::vector<std::pair<double, std::pair<int, int>>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({dist2(a, b), {a, b}});
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [d, ab] : pairs) {
    if (static_cast<int>(chosen.size()) >= edges) break;
    chosen.insert(ab);
  }
  std::vector<Edge> list;
  for (auto [a, b] : chosen) list.push_back({a, b});
  out.graph = Graph(n, std::move(list));
  return out;
}

}  // namespace graphot
