#include "graphot/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphot/error.hpp"
#include "graphot/io.hpp"
#include "min_cost_flow.hpp"
#include "transportation_simplex.hpp"

namespace graphot {

BeckmannFlow w1(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1) {
  check_on_graph(g, p0);
  check_on_graph(g, p1);
  const int n = g.num_vertices();
  detail::MinCostFlow mcf(n);
  for (int r = 0; r < g.num_oriented_edges(); ++r) {
    OrientedEdge e = g.oriented_edge(r);
    mcf.add_arc(e.tail, e.head, 1);
  }
  std::vector<double> supply(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) supply[v] = p0[v] - p1[v];
  mcf.solve(supply);

  BeckmannFlow out;
  out.flow.assign(static_cast<std::size_t>(g.num_oriented_edges()), 0.0);
  for (int r = 0; r < g.num_oriented_edges(); r += 2) {
    double net = mcf.flow(r) - mcf.flow(r + 1);
    if (net > 0.0)
      out.flow[r] = net;
    else
      out.flow[r + 1] = -net;
  }
  for (double j : out.flow) out.cost += j;
  return out;
}

double TransportPlan::at(Vertex v, Vertex w) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{v, w},
                             [](const PlanEntry& e, std::pair<Vertex, Vertex> key) {
                               return std::pair{e.v, e.w} < key;
                             });
  return it != entries.end() && it->v == v && it->w == w ? it->mass : 0.0;
}

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  for (const auto& e : entries) sums[e.v] += e.mass;
  return sums;
}

std::vector<double> TransportPlan::column_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  for (const auto& e : entries) sums[e.w] += e.mass;
  return sums;
}

FullTransport w_full(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                     int max_vertices) {
  check_on_graph(g, p0);
  check_on_graph(g, p1);
  if (g.num_vertices() > max_vertices)
    throw SizeLimitError("full transportation LP refused for n = " + std::to_string(g.num_vertices()) +
                         " > " + std::to_string(max_vertices) +
                         "; use the flow distance (distance subcommand) instead");
  auto rows = p0.support(), cols = p1.support();
  std::vector<double> supply, demand, cost;
  for (Vertex v : rows) supply.push_back(p0[v]);
  for (Vertex w : cols) demand.push_back(p1[w]);
  cost.reserve(rows.size() * cols.size());
  for (Vertex v : rows) {
    auto d = shortest_path_distances(g, v);
    for (Vertex w : cols) cost.push_back(static_cast<double>(d[w]) * d[w]);
  }
  auto cells = detail::transportation_simplex(supply, demand, cost);

  FullTransport out;
  out.plan.n = g.num_vertices();
  for (const auto& c : cells) {
    out.plan.entries.push_back({rows[c.row], cols[c.col], c.mass});
    out.cost += c.mass * cost[static_cast<std::size_t>(c.row) * cols.size() + c.col];
  }
  std::sort(out.plan.entries.begin(), out.plan.entries.end(),
            [](const PlanEntry& a, const PlanEntry& b) { return std::pair{a.v, a.w} < std::pair{b.v, b.w}; });
  out.distance = std::sqrt(std::max(0.0, out.cost));
  return out;
}

double lp_norm_distance(const VertexDistribution& p0, const VertexDistribution& p1, double order) {
  if (p0.size() != p1.size()) throw ShapeError("distributions have different sizes");
  if (!(order >= 1.0)) throw ValidationError("norm order must be >= 1");
  double sum = 0.0;
  for (Vertex v = 0; v < p0.size(); ++v) sum += std::pow(std::abs(p0[v] - p1[v]), order);
  return std::pow(sum, 1.0 / order);
}

std::string plan_csv(const TransportPlan& plan, int precision) {
  std::ostringstream out;
  out << "v,w,T\n";
  for (const auto& e : plan.entries)
    if (e.mass > 1e-12) out << e.v << ',' << e.w << ',' << format_fixed(e.mass, precision) << '\n';
  return out.str();
}

}  // namespace graphot
