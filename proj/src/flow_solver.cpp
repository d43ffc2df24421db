#include "graphot/flow_solver.hpp"

#include <cmath>
#include <limits>

#include "graphot/error.hpp"
#include "solver_internal.hpp"

namespace graphot {

const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::InteriorPoint:
      return "ipm";
    case SolverMethod::Admm:
      return "admm";
  }
  return "?";
}

SolverMethod parse_solver_method(const std::string& name) {
  if (name == "ipm" || name == "interior-point") return SolverMethod::InteriorPoint;
  if (name == "admm") return SolverMethod::Admm;
  throw ValidationError("unknown solver method '" + name + "' (expected ipm or admm)");
}

void SolverConfig::validate() const {
  if (!(tol_feasibility > 0.0)) throw ValidationError("tol_feasibility must be > 0");
  if (!(tol_objective > 0.0)) throw ValidationError("tol_objective must be > 0");
  if (objective_window < 1) throw ValidationError("objective_window must be >= 1");
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (!(epsilon_floor > 0.0)) throw ValidationError("epsilon_floor must be > 0");
  if (!(barrier_gap > 0.0)) throw ValidationError("barrier_gap must be > 0");
  if (admm_balance_interval < 1) throw ValidationError("admm_balance_interval must be >= 1");
  if (!(admm_balance_factor > 1.0)) throw ValidationError("admm_balance_factor must be > 1");
}

TransportPath solve(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1, int k,
                    const SolverConfig& cfg) {
  cfg.validate();
  check_on_graph(g, p0);
  check_on_graph(g, p1);
  if (k < 1) throw ValidationError("number of time steps must be >= 1");

  TransportPath path;
  path.k = k;
  path.report.method = cfg.method;
  if (p0 == p1) {
    path.q.assign(static_cast<std::size_t>(k) + 1, p0.vector());
    path.flows.assign(static_cast<std::size_t>(k),
                      FlowField(static_cast<std::size_t>(g.num_oriented_edges()), 0.0));
    path.speeds.assign(static_cast<std::size_t>(k), 0.0);
    return path;
  }

  DiscreteProblem prob(g, p0, p1, k);
  detail::SolveOutcome outcome = cfg.method == SolverMethod::Admm ? detail::solve_admm(prob, cfg)
                                                                  : detail::solve_interior_point(prob, cfg);
  prob.expand(outcome.x, path.q, path.flows);
  path.report = std::move(outcome.report);
  path.report.primal_residual = prob.continuity_residual(outcome.x);
  path.objective = objective(g, path.q, path.flows, k);
  path.distance = std::sqrt(path.objective);
  path.speeds = per_step_speeds(g, path);
  return path;
}

double distance(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1, int k,
                const SolverConfig& cfg) {
  try {
    return solve(g, p0, p1, k, cfg).distance;
  } catch (const InfeasibleTransport&) {
    return std::numeric_limits<double>::infinity();
  }
}

SymmetrizedResult solve_symmetrized(const Graph& g, const VertexDistribution& p0,
                                    const VertexDistribution& p1, int k, const SolverConfig& cfg) {
  SymmetrizedResult out;
  out.forward = solve(g, p0, p1, k, cfg);
  out.backward = solve(g, p1, p0, k, cfg);
  out.distance = 0.5 * (out.forward.distance + out.backward.distance);
  return out;
}

}  // namespace graphot
