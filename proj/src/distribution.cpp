#include "graphot/distribution.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "graphot/error.hpp"
#include "graphot/log.hpp"

namespace graphot {

VertexDistribution::VertexDistribution(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("distribution is empty");
  double mass = 0.0;
  for (std::size_t v = 0; v < values_.size(); ++v) {
    double x = values_[v];
    if (!std::isfinite(x) || x < 0.0)
      throw ValidationError("distribution entry " + std::to_string(v) +
                            " is negative or not finite");
    mass += x;
  }
  double dev = std::abs(mass - 1.0);
  if (dev > kRenormalizeTolerance) {
    std::ostringstream msg;
    msg << "distribution mass " << mass << " is not 1";
    throw ValidationError(msg.str());
  }
  if (dev > 1e-9) {
    std::ostringstream msg;
    msg << "distribution mass " << mass << " renormalized to 1";
    warn(msg.str());
  }
  if (mass != 1.0)
    for (double& x : values_) x /= mass;
}

VertexDistribution VertexDistribution::from_weights(std::vector<double> weights) {
  double mass = 0.0;
  for (double x : weights) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("weights must be finite and >= 0");
    mass += x;
  }
  if (!(mass > 0.0)) throw ValidationError("weights have zero total mass");
  for (double& x : weights) x /= mass;
  return VertexDistribution(std::move(weights), Trusted{});
}

VertexDistribution VertexDistribution::point_mass(int n, Vertex v) {
  if (v < 0 || v >= n) throw IndexError("point mass vertex outside range");
  std::vector<double> values(static_cast<std::size_t>(n), 0.0);
  values[static_cast<std::size_t>(v)] = 1.0;
  return VertexDistribution(std::move(values), Trusted{});
}

VertexDistribution VertexDistribution::uniform(int n) {
  if (n < 1) throw ValidationError("uniform distribution needs n >= 1");
  return VertexDistribution(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n), Trusted{});
}

std::vector<Vertex> VertexDistribution::support() const {
  std::vector<Vertex> s;
  for (std::size_t v = 0; v < values_.size(); ++v)
    if (values_[v] > 0.0) s.push_back(static_cast<Vertex>(v));
  return s;
}

void check_on_graph(const Graph& g, const VertexDistribution& p) {
  if (p.size() != g.num_vertices())
    throw ShapeError("distribution has " + std::to_string(p.size()) + " entries, graph has " +
                     std::to_string(g.num_vertices()) + " vertices");
}

double entropy(const VertexDistribution& p) {
  double h = 0.0;
  for (double x : p.values())
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

}  // namespace graphot
