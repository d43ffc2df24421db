#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

namespace graphot {

using Vertex = int;

/// Undirected edge as given on input; `u < v` is not required.
struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Element of the doubled edge set. Index r = 2e is u->v of undirected edge e
/// and r = 2e+1 is v->u.
struct OrientedEdge {
  Vertex tail;
  Vertex head;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Values per oriented edge, canonical order (see OrientedEdge).
using FlowField = std::vector<double>;

/// Immutable undirected connected graph with unit edge lengths.
///
/// Construction validates the invariants: vertices in [0,n), no self-loops,
/// no duplicate undirected edges, connected. A single isolated vertex (n=1)
/// is a valid graph.
class Graph {
 public:
  Graph(int num_vertices, std::vector<Edge> edges, std::vector<std::string> labels = {});

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int num_oriented_edges() const noexcept { return 2 * num_edges(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  Edge edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  OrientedEdge oriented_edge(int r) const {
    const Edge& e = edges_[static_cast<std::size_t>(r >> 1)];
    return (r & 1) ? OrientedEdge{e.v, e.u} : OrientedEdge{e.u, e.v};
  }
  static int reverse(int r) noexcept { return r ^ 1; }
  static int undirected_index(int r) noexcept { return r >> 1; }

  /// Oriented edges leaving v.
  std::span<const int> out_edges(Vertex v) const;
  /// Oriented edges entering v.
  std::span<const int> in_edges(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(out_edges(v).size()); }
  int max_degree() const noexcept { return max_degree_; }

  /// Display labels; empty when none were given.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// (Dp)(v->w) = p(w) - p(v).
  std::vector<double> gradient(std::span<const double> p) const;
  /// D^T J: inflow minus outflow at every vertex.
  std::vector<double> divergence(std::span<const double> flow) const;
  /// D as a (2m x n) sparse matrix.
  Eigen::SparseMatrix<double> incidence_matrix() const;

  void check_vertex(Vertex v) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  // CSR adjacency of oriented edges by tail and by head.
  std::vector<int> out_offsets_, out_list_;
  std::vector<int> in_offsets_, in_list_;
  int max_degree_ = 0;
};

/// True when every vertex is reachable from vertex 0.
bool is_connected(int num_vertices, std::span<const Edge> edges);

/// Hop distances from `source`; unreachable vertices get -1 (cannot happen for
/// a valid Graph).
std::vector<int> shortest_path_distances(const Graph& g, Vertex source);

/// Multi-source BFS: hop distance to the nearest vertex of `sources`.
std::vector<int> distance_to_set(const Graph& g, std::span<const Vertex> sources);

/// Row-major n x n hop-distance matrix from n BFS runs.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g);
  int operator()(Vertex v, Vertex w) const {
    return d_[static_cast<std::size_t>(v) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(w)];
  }
  int size() const noexcept { return n_; }
  int diameter() const;

 private:
  int n_;
  std::vector<int> d_;
};

}  // namespace graphot
