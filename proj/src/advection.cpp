#include "graphot/advection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphot/error.hpp"
#include "graphot/io.hpp"

namespace graphot {

namespace {

void check_flow_shape(const Graph& g, std::span<const double> f, const char* what) {
  if (static_cast<int>(f.size()) != g.num_oriented_edges())
    throw ShapeError(std::string(what) + " has length " + std::to_string(f.size()) +
                     ", expected " + std::to_string(g.num_oriented_edges()));
}

void check_vertex_shape(const Graph& g, std::span<const double> p, const char* what) {
  if (static_cast<int>(p.size()) != g.num_vertices())
    throw ShapeError(std::string(what) + " has length " + std::to_string(p.size()) +
                     ", expected " + std::to_string(g.num_vertices()));
}

void check_rates(const Graph& g, std::span<const double> rates, double dt) {
  check_flow_shape(g, rates, "velocity field");
  double max_rate = 0.0;
  for (double u : rates) {
    if (!std::isfinite(u) || u < 0.0)
      throw ValidationError("velocity field entries must be finite and nonnegative");
    max_rate = std::max(max_rate, u);
  }
  if (max_rate * dt * g.max_degree() > 0.5) {
    std::ostringstream msg;
    msg << "step size too large: max rate " << max_rate << " * dt " << dt << " * max degree "
        << g.max_degree() << " exceeds 0.5; increase the number of steps";
    throw StabilityError(msg.str());
  }
}

// out = G p
void generator_apply(const Graph& g, std::span<const double> rates, const std::vector<double>& p,
                     std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (int r = 0; r < g.num_oriented_edges(); ++r) {
    double u = rates[r];
    if (u == 0.0) continue;
    OrientedEdge e = g.oriented_edge(r);
    double moved = u * p[e.tail];
    out[e.head] += moved;
    out[e.tail] -= moved;
  }
}

void rk4_step(const Graph& g, std::span<const double> rates, double dt, std::vector<double>& p) {
  const std::size_t n = p.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  generator_apply(g, rates, p, k1);
  for (std::size_t v = 0; v < n; ++v) tmp[v] = p[v] + 0.5 * dt * k1[v];
  generator_apply(g, rates, tmp, k2);
  for (std::size_t v = 0; v < n; ++v) tmp[v] = p[v] + 0.5 * dt * k2[v];
  generator_apply(g, rates, tmp, k3);
  for (std::size_t v = 0; v < n; ++v) tmp[v] = p[v] + dt * k3[v];
  generator_apply(g, rates, tmp, k4);
  for (std::size_t v = 0; v < n; ++v) p[v] += dt / 6.0 * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v]);
}

std::vector<double> clamped(const std::vector<double>& p) {
  std::vector<double> out = p;
  for (double& x : out)
    if (x < 0.0 && x >= -1e-9) x = 0.0;
  return out;
}

AdvectionTrajectory integrate(const Graph& g, const VertexDistribution& p0, double duration,
                              int steps, const auto& rates_for_step) {
  check_on_graph(g, p0);
  if (steps < 1) throw ValidationError("steps must be >= 1");
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw ValidationError("duration must be finite and nonnegative");
  const double dt = duration / steps;
  for (int j = 0; j < steps; ++j) check_rates(g, rates_for_step(j), dt);

  AdvectionTrajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  std::vector<double> p = p0.vector();
  traj.times.push_back(0.0);
  traj.samples.push_back(p);
  for (int j = 0; j < steps; ++j) {
    rk4_step(g, rates_for_step(j), dt, p);
    traj.times.push_back(dt * (j + 1));
    traj.samples.push_back(clamped(p));
  }
  return traj;
}

}  // namespace

AdvectionTrajectory advect(const Graph& g, const VertexDistribution& p0, std::span<const double> rates,
                           double duration, int steps) {
  return integrate(g, p0, duration, steps, [&](int) { return rates; });
}

AdvectionTrajectory advect(const Graph& g, const VertexDistribution& p0,
                           const std::vector<FlowField>& rates, double duration) {
  if (rates.empty()) throw ValidationError("time-varying velocity field has no samples");
  return integrate(g, p0, duration, static_cast<int>(rates.size()),
                   [&](int j) { return std::span<const double>(rates[static_cast<std::size_t>(j)]); });
}

double advective_inner_product(const Graph& g, std::span<const double> p,
                               std::span<const double> u, std::span<const double> w) {
  check_vertex_shape(g, p, "distribution");
  check_flow_shape(g, u, "first flow");
  check_flow_shape(g, w, "second flow");
  for (double x : p)
    if (!(x > 0.0)) throw DomainError("advective inner product needs p(v) > 0 at every vertex");
  double sum = 0.0;
  for (int r = 0; r < g.num_oriented_edges(); ++r) {
    OrientedEdge e = g.oriented_edge(r);
    double pv = p[e.tail], pw = p[e.head];
    sum += pv / pw * 0.5 * (pv + pw) * u[r] * w[r];
  }
  return sum;
}

double advective_norm(const Graph& g, std::span<const double> p, std::span<const double> u) {
  return std::sqrt(std::max(0.0, advective_inner_product(g, p, u, u)));
}

double momentum_norm_squared(const Graph& g, std::span<const double> p_tail,
                             std::span<const double> p_head, std::span<const double> flow) {
  check_vertex_shape(g, p_tail, "tail density");
  check_vertex_shape(g, p_head, "head density");
  check_flow_shape(g, flow, "momentum");
  double sum = 0.0;
  for (int r = 0; r < g.num_oriented_edges(); ++r) {
    double j = flow[r];
    if (j == 0.0) continue;
    if (j < 0.0) throw ValidationError("momentum must be nonnegative");
    OrientedEdge e = g.oriented_edge(r);
    double a = p_tail[e.tail], b = p_head[e.head];
    if (!(a > 0.0) || !(b > 0.0))
      throw InfeasibleFlow("positive momentum on edge " + std::to_string(e.tail) + "->" +
                           std::to_string(e.head) + " through zero density");
    sum += 0.5 * j * j * (1.0 / a + 1.0 / b);
  }
  return sum;
}

std::string trajectory_csv(const AdvectionTrajectory& traj, int precision) {
  std::string out = "t";
  std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().size();
  for (std::size_t v = 0; v < n; ++v) out += ",v" + std::to_string(v);
  out += '\n';
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    out += format_fixed(traj.times[i], precision);
    for (double x : traj.samples[i]) out += ',' + format_fixed(x, precision);
    out += '\n';
  }
  return out;
}

}  // namespace graphot
