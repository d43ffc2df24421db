#include "graphot/discrete_problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "graphot/error.hpp"
#include "max_flow.hpp"

namespace graphot {

namespace {

std::vector<char> expand_by_one_hop(const Graph& g, const std::vector<char>& set) {
  std::vector<char> out = set;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (set[v])
      for (int r : g.out_edges(v)) out[g.oriented_edge(r).head] = 1;
  return out;
}

std::vector<char> support_mask(const VertexDistribution& p) {
  std::vector<char> mask(static_cast<std::size_t>(p.size()), 0);
  for (Vertex v = 0; v < p.size(); ++v) mask[v] = p[v] > 0.0;
  return mask;
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

// Strongly connected components of the residual graph restricted to nodes
// >= first_node (iterative Kosaraju). Returns the component size per node.
std::vector<int> residual_component_sizes(const detail::MaxFlow& flow, int first_node, double eps) {
  const int n = flow.num_nodes();
  auto usable = [&](int a) { return flow.residual(a) > eps && flow.arc_head(a) >= first_node; };
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = first_node; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& arcs = flow.arcs_from(v);
      if (i < arcs.size()) {
        int a = arcs[i++];
        int w = flow.arc_head(a);
        if (usable(a) && !seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  // Transposed residual graph: w -> v for every usable arc v -> w.
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
  for (int v = first_node; v < n; ++v)
    for (int a : flow.arcs_from(v))
      if (usable(a)) rev[flow.arc_head(a)].push_back(v);
  std::vector<int> comp(static_cast<std::size_t>(n), -1), size;
  std::vector<int> todo;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    const int c = static_cast<int>(size.size());
    size.push_back(0);
    comp[*it] = c;
    todo.push_back(*it);
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      ++size[c];
      for (int w : rev[v])
        if (comp[w] < 0) {
          comp[w] = c;
          todo.push_back(w);
        }
    }
  }
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  for (int v = first_node; v < n; ++v) out[v] = size[comp[v]];
  return out;
}

}  // namespace

std::vector<std::vector<char>> admissible_supports(const Graph& g, const VertexDistribution& p0,
                                                   const VertexDistribution& p1, int k) {
  check_on_graph(g, p0);
  check_on_graph(g, p1);
  if (k < 1) throw ValidationError("number of time steps must be >= 1");
  const int n = g.num_vertices();

  // Hop bounds: q_i(v) > 0 needs v within i hops of supp p0 and k - i of supp p1.
  std::vector<std::vector<char>> fwd(static_cast<std::size_t>(k) + 1), bwd(fwd.size());
  fwd[0] = support_mask(p0);
  for (int i = 1; i <= k; ++i) fwd[i] = expand_by_one_hop(g, fwd[i - 1]);
  bwd[k] = support_mask(p1);
  for (int i = k - 1; i >= 0; --i) bwd[i] = expand_by_one_hop(g, bwd[i + 1]);
  std::vector<std::vector<char>> mask(fwd.size());
  mask[0] = fwd[0];
  mask[k] = bwd[k];
  for (int i = 1; i < k; ++i) {
    mask[i].resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) mask[i][v] = fwd[i][v] && bwd[i][v];
  }

  // Flow on v -> w in step i needs q_{i-1}(v) > 0 and q_i(w) > 0, so within one
  // step mass may pass through any vertex positive at both ends of the step.
  // Time-expanded network: L(i, v) holds q_i(v), T(i, x) is x in transit
  // during step i. Mass is at most 1, so capacity 2 is unbounded.
  constexpr double kOpen = 2.0, kEps = 1e-12;
  const int source = 0, sink = 1;
  auto layer = [n](int i, Vertex v) { return 2 + i * n + v; };
  auto transit = [n, k](int i, Vertex v) { return 2 + (k + 1) * n + (i - 1) * n + v; };
  for (;;) {
    detail::MaxFlow flow(2 + (2 * k + 1) * n);
    for (Vertex v = 0; v < n; ++v) {
      if (p0[v] > 0.0) flow.add_arc(source, layer(0, v), p0[v]);
      if (p1[v] > 0.0) flow.add_arc(layer(k, v), sink, p1[v]);
    }
    for (int i = 1; i <= k; ++i) {
      const auto &before = mask[i - 1], &after = mask[i];
      auto from = [&](Vertex v) { return before[v] && after[v] ? transit(i, v) : layer(i - 1, v); };
      auto to = [&](Vertex v) { return before[v] && after[v] ? transit(i, v) : layer(i, v); };
      for (Vertex v = 0; v < n; ++v)
        if (before[v] && after[v]) {
          flow.add_arc(layer(i - 1, v), transit(i, v), kOpen);
          flow.add_arc(transit(i, v), layer(i, v), kOpen);
        }
      for (int r = 0; r < g.num_oriented_edges(); ++r) {
        OrientedEdge e = g.oriented_edge(r);
        if (before[e.tail] && after[e.head]) flow.add_arc(from(e.tail), to(e.head), kOpen);
      }
    }
    if (flow.solve(source, sink) < 1.0 - 1e-9) return {};

    // A node can carry mass in some feasible flow iff it carries mass in this
    // one or lies on a cycle of the residual graph.
    std::vector<double> through(static_cast<std::size_t>(flow.num_nodes()), 0.0);
    for (int v = 0; v < flow.num_nodes(); ++v)
      for (int a : flow.arcs_from(v))
        if (a % 2 == 0) through[flow.arc_head(a)] += flow.flow(a);
    auto comp = residual_component_sizes(flow, 2, kEps);
    bool changed = false;
    for (int i = 1; i < k; ++i)
      for (Vertex v = 0; v < n; ++v) {
        if (!mask[i][v]) continue;
        int node = layer(i, v);
        if (through[node] <= kEps && comp[node] < 2) {
          mask[i][v] = 0;
          changed = true;
        }
      }
    if (!changed) return mask;
  }
}

bool reachable_within(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                      int k) {
  return !admissible_supports(g, p0, p1, k).empty();
}

DiscreteProblem::DiscreteProblem(const Graph& g, const VertexDistribution& p0,
                                 const VertexDistribution& p1, int k)
    : graph_(&g), p0_(p0), p1_(p1), k_(k) {
  check_on_graph(g, p0);
  check_on_graph(g, p1);
  if (k < 1) throw ValidationError("number of time steps must be >= 1");
  const auto positive = admissible_supports(g, p0, p1, k);
  if (positive.empty())
    throw InfeasibleTransport("target is not reachable from source in " + std::to_string(k) + " steps");

  const int n = g.num_vertices();
  const int m2 = g.num_oriented_edges();

  flow_var_.assign(static_cast<std::size_t>(k) * m2, -1);
  density_var_.assign(static_cast<std::size_t>(k + 1) * n, -1);
  for (int i = 1; i <= k; ++i)
    for (int r = 0; r < m2; ++r) {
      OrientedEdge e = g.oriented_edge(r);
      if (positive[i - 1][e.tail] && positive[i][e.head]) {
        flow_var_[static_cast<std::size_t>(i - 1) * m2 + r] = static_cast<int>(vars_.size());
        vars_.push_back({VarKind::Flow, i, r});
      }
    }
  num_flow_vars_ = static_cast<int>(vars_.size());
  for (int i = 1; i < k; ++i)
    for (Vertex v = 0; v < n; ++v)
      if (positive[i][v]) {
        density_var_[static_cast<std::size_t>(i) * n + v] = static_cast<int>(vars_.size());
        vars_.push_back({VarKind::Density, i, v});
      }

  for (int x = 0; x < num_flow_vars_; ++x) {
    const VarInfo& info = vars_[x];
    OrientedEdge e = g.oriented_edge(info.index);
    int i = info.step;
    for (int side = 0; side < 2; ++side) {
      int step = side == 0 ? i - 1 : i;
      Vertex v = side == 0 ? e.tail : e.head;
      int dv = density_var(step, v);
      terms_.push_back({x, dv, dv < 0 ? fixed_density(step, v) : 0.0});
    }
  }

  // Continuity rows (i, v), i = 1..k. Row id = (i-1)*n + v.
  const int num_rows = k * n;
  auto row_of = [n](int i, Vertex v) { return (i - 1) * n + v; };
  std::vector<std::vector<std::pair<int, double>>> row_entries(static_cast<std::size_t>(num_rows));
  DisjointSets blocks(num_rows);
  for (int x = 0; x < num_vars(); ++x) {
    const VarInfo& info = vars_[x];
    int ra, rb;
    if (info.kind == VarKind::Flow) {
      OrientedEdge e = g.oriented_edge(info.index);
      ra = row_of(info.step, e.head);
      rb = row_of(info.step, e.tail);
      row_entries[ra].push_back({x, 1.0});
      row_entries[rb].push_back({x, -1.0});
    } else {
      ra = row_of(info.step, info.index);
      rb = row_of(info.step + 1, info.index);
      row_entries[ra].push_back({x, -1.0});
      row_entries[rb].push_back({x, 1.0});
    }
    blocks.unite(ra, rb);
  }

  std::vector<double> rhs(static_cast<std::size_t>(num_rows));
  for (int i = 1; i <= k; ++i)
    for (Vertex v = 0; v < n; ++v)
      rhs[row_of(i, v)] = (density_var(i, v) < 0 ? fixed_density(i, v) : 0.0) -
                          (density_var(i - 1, v) < 0 ? fixed_density(i - 1, v) : 0.0);

  // Each block of the time-expanded network has exactly one redundant row;
  // its right-hand sides must balance.
  std::vector<double> block_balance(static_cast<std::size_t>(num_rows), 0.0);
  std::vector<int> block_last(static_cast<std::size_t>(num_rows), -1);
  for (int row = 0; row < num_rows; ++row) {
    if (row_entries[row].empty()) {
      if (std::abs(rhs[row]) > 1e-9)
        throw InfeasibleTransport("continuity cannot hold at a vertex with no admissible flow");
      continue;
    }
    int root = blocks.find(row);
    block_balance[root] += rhs[row];
    block_last[root] = row;
  }
  std::vector<char> keep(static_cast<std::size_t>(num_rows), 0);
  for (int row = 0; row < num_rows; ++row) {
    if (row_entries[row].empty()) continue;
    int root = blocks.find(row);
    if (std::abs(block_balance[root]) > 1e-9)
      throw InfeasibleTransport("mass balance fails on a block of the time-expanded network");
    keep[row] = block_last[root] != row;
  }

  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> kept_rhs;
  int out_row = 0;
  for (int row = 0; row < num_rows; ++row) {
    if (!keep[row]) continue;
    for (auto [x, c] : row_entries[row]) trips.emplace_back(out_row, x, c);
    kept_rhs.push_back(rhs[row]);
    ++out_row;
  }
  a_.resize(out_row, num_vars());
  a_.setFromTriplets(trips.begin(), trips.end());
  a_.makeCompressed();
  b_ = Eigen::Map<Eigen::VectorXd>(kept_rhs.data(), static_cast<Eigen::Index>(kept_rhs.size()));
}

int DiscreteProblem::flow_var(int i, int r) const {
  return flow_var_[static_cast<std::size_t>(i - 1) * graph_->num_oriented_edges() +
                   static_cast<std::size_t>(r)];
}

int DiscreteProblem::density_var(int i, Vertex v) const {
  return density_var_[static_cast<std::size_t>(i) * graph_->num_vertices() +
                      static_cast<std::size_t>(v)];
}

double DiscreteProblem::fixed_density(int i, Vertex v) const {
  if (i == 0) return p0_[v];
  if (i == k_) return p1_[v];
  return 0.0;
}

double DiscreteProblem::objective(std::span<const double> x) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    double j = x[t.flow_var];
    if (j == 0.0) continue;
    double d = t.density_var < 0 ? t.fixed_density : x[t.density_var];
    if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
    sum += j * j / d;
  }
  return term_weight() * sum;
}

void DiscreteProblem::expand(std::span<const double> x, std::vector<std::vector<double>>& q,
                             std::vector<FlowField>& flows) const {
  const int n = graph_->num_vertices();
  const int m2 = graph_->num_oriented_edges();
  q.assign(static_cast<std::size_t>(k_) + 1, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  flows.assign(static_cast<std::size_t>(k_), FlowField(static_cast<std::size_t>(m2), 0.0));
  q[0] = p0_.vector();
  q[k_] = p1_.vector();
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    const VarInfo& info = vars_[v];
    if (info.kind == VarKind::Flow)
      flows[static_cast<std::size_t>(info.step) - 1][info.index] = x[v];
    else
      q[info.step][info.index] = x[v];
  }
}

double DiscreteProblem::continuity_residual(std::span<const double> x) const {
  std::vector<std::vector<double>> q;
  std::vector<FlowField> flows;
  expand(x, q, flows);
  double worst = 0.0;
  for (int i = 1; i <= k_; ++i) {
    auto div = graph_->divergence(flows[i - 1]);
    for (Vertex v = 0; v < graph_->num_vertices(); ++v)
      worst = std::max(worst, std::abs(div[v] - (q[i][v] - q[i - 1][v])));
  }
  return worst;
}

}  // namespace graphot
