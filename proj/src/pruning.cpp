#include "graphot/pruning.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "graphot/baselines.hpp"
#include "graphot/error.hpp"

namespace graphot {

namespace {

constexpr double kUsedFlow = 1e-10;

// Connected components of the kept edge set restricted to kept vertices.
std::vector<int> components(const Graph& g, const std::vector<char>& keep_vertex,
                            const std::vector<char>& keep_edge, int& count) {
  std::vector<int> comp(static_cast<std::size_t>(g.num_vertices()), -1);
  count = 0;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (!keep_vertex[s] || comp[s] >= 0) continue;
    std::deque<Vertex> queue{s};
    comp[s] = count;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (int r : g.out_edges(v)) {
        if (!keep_edge[Graph::undirected_index(r)]) continue;
        Vertex w = g.oriented_edge(r).head;
        if (comp[w] < 0) {
          comp[w] = count;
          queue.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

PrunedGraph prune_by_w1(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                        int hop_radius) {
  if (hop_radius < 0) throw ValidationError("hop radius must be >= 0");
  check_on_graph(g, p0);
  check_on_graph(g, p1);
  const int n = g.num_vertices(), m = g.num_edges();
  auto flow = w1(g, p0, p1).flow;

  std::vector<char> keep_edge(static_cast<std::size_t>(m), 0), keep_vertex(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> seeds;
  for (int e = 0; e < m; ++e)
    if (flow[2 * e] + flow[2 * e + 1] > kUsedFlow) {
      keep_edge[e] = 1;
      seeds.push_back(g.edge(e).u);
      seeds.push_back(g.edge(e).v);
    }
  for (const auto* p : {&p0, &p1})
    for (Vertex v : p->support()) seeds.push_back(v);
  for (Vertex v : seeds) keep_vertex[v] = 1;

  if (hop_radius > 0) {
    auto dist = distance_to_set(g, seeds);
    for (int e = 0; e < m; ++e) {
      Edge ed = g.edge(e);
      if (std::min(dist[ed.u], dist[ed.v]) <= hop_radius - 1) {
        keep_edge[e] = 1;
        keep_vertex[ed.u] = keep_vertex[ed.v] = 1;
      }
    }
  }

  // Join components: BFS in the full graph from component 0 to the nearest
  // kept vertex of another component, then keep that path.
  for (;;) {
    int count = 0;
    auto comp = components(g, keep_vertex, keep_edge, count);
    if (count <= 1) break;
    std::vector<int> via(static_cast<std::size_t>(n), -2);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
      if (comp[v] == 0) {
        via[v] = -1;
        queue.push_back(v);
      }
    Vertex hit = -1;
    while (!queue.empty() && hit < 0) {
      Vertex v = queue.front();
      queue.pop_front();
      for (int r : g.out_edges(v)) {
        Vertex w = g.oriented_edge(r).head;
        if (via[w] != -2) continue;
        via[w] = r;
        if (comp[w] > 0) {
          hit = w;
          break;
        }
        queue.push_back(w);
      }
    }
    for (Vertex v = hit; via[v] >= 0; v = g.oriented_edge(via[v]).tail) {
      keep_edge[Graph::undirected_index(via[v])] = 1;
      keep_vertex[v] = keep_vertex[g.oriented_edge(via[v]).tail] = 1;
    }
  }

  PrunedGraph out{Graph(1, {}), {}, std::vector<int>(static_cast<std::size_t>(n), -1), {}};
  for (Vertex v = 0; v < n; ++v)
    if (keep_vertex[v]) {
      out.old_to_new[v] = static_cast<int>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  std::vector<Edge> edges;
  for (int e = 0; e < m; ++e)
    if (keep_edge[e]) {
      edges.push_back({out.old_to_new[g.edge(e).u], out.old_to_new[g.edge(e).v]});
      out.edge_new_to_old.push_back(e);
    }
  out.graph = Graph(static_cast<int>(out.new_to_old.size()), std::move(edges));
  return out;
}

VertexDistribution PrunedGraph::restrict(const VertexDistribution& p) const {
  if (p.size() != static_cast<int>(old_to_new.size())) throw ShapeError("distribution size does not match the original graph");
  std::vector<double> values(new_to_old.size());
  for (std::size_t i = 0; i < new_to_old.size(); ++i) values[i] = p[new_to_old[i]];
  for (Vertex v = 0; v < p.size(); ++v)
    if (old_to_new[v] < 0 && p[v] > 0.0)
      throw ValidationError("distribution has mass on a pruned vertex");
  return VertexDistribution(std::move(values));
}

std::vector<double> PrunedGraph::lift(std::span<const double> values) const {
  if (values.size() != new_to_old.size()) throw ShapeError("vector size does not match the pruned graph");
  std::vector<double> out(old_to_new.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) out[new_to_old[i]] = values[i];
  return out;
}

std::string index_map_text(const PrunedGraph& pruned) {
  std::ostringstream out;
  for (std::size_t i = 0; i < pruned.new_to_old.size(); ++i) out << pruned.new_to_old[i] << ' ' << i << '\n';
  return out.str();
}

}  // namespace graphot
