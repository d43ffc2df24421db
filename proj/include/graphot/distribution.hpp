#pragma once

#include <span>
#include <vector>

#include "graphot/graph.hpp"

namespace graphot {

/// Probability distribution over the vertices of a graph: nonnegative entries
/// with unit total mass.
class VertexDistribution {
 public:
  /// Mass further than this from 1 is rejected rather than renormalized.
  static constexpr double kRenormalizeTolerance = 1e-4;

  /// Validates `values`. Entries must be finite and nonnegative; a total mass
  /// within kRenormalizeTolerance of 1 is rescaled to 1 (with a warning when
  /// the deviation exceeds 1e-9), anything else throws ValidationError.
  explicit VertexDistribution(std::vector<double> values);

  /// Rescales arbitrary nonnegative weights with positive total to unit mass.
  static VertexDistribution from_weights(std::vector<double> weights);
  static VertexDistribution point_mass(int n, Vertex v);
  static VertexDistribution uniform(int n);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  double operator[](Vertex v) const { return values_[static_cast<std::size_t>(v)]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  /// Vertices carrying positive mass.
  std::vector<Vertex> support() const;

  friend bool operator==(const VertexDistribution&, const VertexDistribution&) = default;

 private:
  struct Trusted {};
  VertexDistribution(std::vector<double> values, Trusted) : values_(std::move(values)) {}
  std::vector<double> values_;
};

/// Throws ShapeError if `p` is not defined on `g`.
void check_on_graph(const Graph& g, const VertexDistribution& p);

/// Shannon entropy in nats with 0 ln 0 = 0.
double entropy(const VertexDistribution& p);

}  // namespace graphot
