#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

/// Subgraph with index maps back to the original graph.
struct PrunedGraph {
  Graph graph;
  std::vector<Vertex> new_to_old;  // per pruned vertex
  std::vector<int> old_to_new;     // per original vertex, -1 when dropped
  std::vector<int> edge_new_to_old;

  /// Restricts a distribution whose support survived pruning.
  VertexDistribution restrict(const VertexDistribution& p) const;
  /// Pulls a pruned-graph vertex vector back to the original vertex set (zeros elsewhere).
  std::vector<double> lift(std::span<const double> values) const;
};

/// Keeps the edges used by an optimal W1 flow (flow > 1e-10), every edge
/// within `hop_radius` hops of them (an edge is one hop from the edges it
/// shares a vertex with), and the supports of p0 and p1. Components left
/// disconnected are joined back by shortest paths of the original graph.
PrunedGraph prune_by_w1(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                        int hop_radius = 1);

/// Sidecar text: one "old_id new_id" line per kept vertex.
std::string index_map_text(const PrunedGraph& pruned);

}  // namespace graphot
