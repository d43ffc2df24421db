#include "graphot/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "graphot/error.hpp"

namespace graphot {

namespace {

void build_csr(int n, const std::vector<int>& keys, std::vector<int>& offsets,
               std::vector<int>& list) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int key : keys) ++offsets[static_cast<std::size_t>(key) + 1];
  for (int i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  list.assign(keys.size(), 0);
  std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
  for (std::size_t r = 0; r < keys.size(); ++r)
    list[static_cast<std::size_t>(cursor[static_cast<std::size_t>(keys[r])]++)] =
        static_cast<int>(r);
}

}  // namespace

bool is_connected(int num_vertices, std::span<const Edge> edges) {
  if (num_vertices <= 1) return num_vertices == 1;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_vertices));
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(num_vertices), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == num_vertices;
}

Graph::Graph(int num_vertices, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(num_vertices), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ < 1) throw ValidationError("graph must have at least one vertex");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw ValidationError("label count does not match vertex count");
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_)
      throw ValidationError("edge " + std::to_string(e) + " references a vertex outside [0," +
                            std::to_string(n_) + ")");
    if (ed.u == ed.v)
      throw ValidationError("self-loop at vertex " + std::to_string(ed.u));
    if (!seen.emplace(std::min(ed.u, ed.v), std::max(ed.u, ed.v)).second)
      throw ValidationError("duplicate edge (" + std::to_string(ed.u) + "," +
                            std::to_string(ed.v) + ")");
  }
  if (!is_connected(n_, edges_)) throw ConnectivityError("graph is not connected");

  std::vector<int> tails, heads;
  tails.reserve(2 * edges_.size());
  heads.reserve(2 * edges_.size());
  for (const Edge& ed : edges_) {
    tails.push_back(ed.u);
    heads.push_back(ed.v);
    tails.push_back(ed.v);
    heads.push_back(ed.u);
  }
  build_csr(n_, tails, out_offsets_, out_list_);
  build_csr(n_, heads, in_offsets_, in_list_);
  for (int v = 0; v < n_; ++v) max_degree_ = std::max(max_degree_, degree(v));
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_)
    throw IndexError("vertex " + std::to_string(v) + " outside [0," + std::to_string(n_) + ")");
}

std::span<const int> Graph::out_edges(Vertex v) const {
  auto b = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(v)]);
  auto e = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(v) + 1]);
  return std::span<const int>(out_list_).subspan(b, e - b);
}

std::span<const int> Graph::in_edges(Vertex v) const {
  auto b = static_cast<std::size_t>(in_offsets_[static_cast<std::size_t>(v)]);
  auto e = static_cast<std::size_t>(in_offsets_[static_cast<std::size_t>(v) + 1]);
  return std::span<const int>(in_list_).subspan(b, e - b);
}

std::vector<double> Graph::gradient(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != n_)
    throw ShapeError("vertex vector has length " + std::to_string(p.size()) + ", expected " +
                     std::to_string(n_));
  std::vector<double> out(static_cast<std::size_t>(num_oriented_edges()));
  for (int r = 0; r < num_oriented_edges(); ++r) {
    OrientedEdge oe = oriented_edge(r);
    out[static_cast<std::size_t>(r)] = p[oe.head] - p[oe.tail];
  }
  return out;
}

std::vector<double> Graph::divergence(std::span<const double> flow) const {
  if (static_cast<int>(flow.size()) != num_oriented_edges())
    throw ShapeError("flow has length " + std::to_string(flow.size()) + ", expected " +
                     std::to_string(num_oriented_edges()));
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (int r = 0; r < num_oriented_edges(); ++r) {
    OrientedEdge oe = oriented_edge(r);
    out[oe.head] += flow[r];
    out[oe.tail] -= flow[r];
  }
  return out;
}

Eigen::SparseMatrix<double> Graph::incidence_matrix() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * static_cast<std::size_t>(num_oriented_edges()));
  for (int r = 0; r < num_oriented_edges(); ++r) {
    OrientedEdge oe = oriented_edge(r);
    t.emplace_back(r, oe.tail, -1.0);
    t.emplace_back(r, oe.head, 1.0);
  }
  Eigen::SparseMatrix<double> d(num_oriented_edges(), n_);
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

std::vector<int> distance_to_set(const Graph& g, std::span<const Vertex> sources) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    g.check_vertex(s);
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (int r : g.out_edges(v)) {
      Vertex w = g.oriented_edge(r).head;
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> shortest_path_distances(const Graph& g, Vertex source) {
  g.check_vertex(source);
  Vertex s[1] = {source};
  return distance_to_set(g, s);
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.num_vertices()) {
  d_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  for (Vertex s = 0; s < n_; ++s) {
    auto row = shortest_path_distances(g, s);
    std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s) * n_);
  }
}

int DistanceMatrix::diameter() const { return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end()); }

}  // namespace graphot
