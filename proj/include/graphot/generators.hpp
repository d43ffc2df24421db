#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "graphot/graph.hpp"

namespace graphot {

/// Portable uniform draws: the standard distributions are implementation
/// defined, these are not.
double uniform01(std::mt19937_64& rng);
int uniform_int(std::mt19937_64& rng, int bound);  // [0, bound)

Graph line_graph(int n);
Graph cycle_graph(int n);
/// Hub 0 with `leaves` spokes.
Graph star_graph(int leaves);

/// Line 0..L-1 with s leaves on each end vertex. |V| = L + 2s, |E| = |V| - 1.
/// Leaves of vertex 0 are L..L+s-1, leaves of vertex L-1 are L+s..L+2s-1.
Graph fan_line_graph(int spokes, int line_length);

/// Random spanning tree plus `extra_edges` distinct random edges.
Graph random_connected_graph(int n, int extra_edges, std::uint64_t seed);

struct GeometricGraph {
  Graph graph;
  std::vector<std::array<double, 2>> points;
};

/// n uniform points in the unit square; edges are the Euclidean MST plus the
/// shortest remaining pairs until `edges` edges exist.
GeometricGraph geometric_graph(int n, int edges, std::uint64_t seed);

}  // namespace graphot
