#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

/// Sampled solution of the graph advection ODE.
struct AdvectionTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> samples;  // samples[i] is p(times[i], .)
};

/// Integrates dp/dt(v) = sum_{w->v} U p(w) - sum_{v->w} U p(v) from p0 with
/// classical RK4 at fixed step duration/steps. Returns steps+1 samples.
///
/// Throws ValidationError for negative or non-finite rates and StabilityError
/// when max_e U(e) * dt * max_degree exceeds 0.5.
AdvectionTrajectory advect(const Graph& g, const VertexDistribution& p0, std::span<const double> rates,
                           double duration, int steps);

/// Time-varying rates, piecewise constant: rates[j] drives integrator step j.
AdvectionTrajectory advect(const Graph& g, const VertexDistribution& p0,
                           const std::vector<FlowField>& rates, double duration);

/// Sum over oriented edges of  p(v)/p(w) * (p(v)+p(w))/2 * U(e) W(e)  for e = v->w.
/// Requires p(v) > 0 everywhere (DomainError otherwise).
double advective_inner_product(const Graph& g, std::span<const double> p,
                               std::span<const double> u, std::span<const double> w);
double advective_norm(const Graph& g, std::span<const double> p, std::span<const double> u);

/// Staggered kinetic energy  sum_e J(e)^2/2 (1/p_tail(v) + 1/p_head(w)).
/// Terms with J(e) = 0 contribute nothing even when a density vanishes;
/// positive flow against a zero density throws InfeasibleFlow.
double momentum_norm_squared(const Graph& g, std::span<const double> p_tail,
                             std::span<const double> p_head, std::span<const double> flow);

/// CSV with header "t,v0,...,v{n-1}", fixed-point with `precision` decimals.
std::string trajectory_csv(const AdvectionTrajectory& traj, int precision = 17);

}  // namespace graphot
