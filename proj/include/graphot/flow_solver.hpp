#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "graphot/discrete_problem.hpp"
#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

enum class SolverMethod {
  /// Primal-dual interior point with sparse LDL^T Newton steps.
  InteriorPoint,
  /// Consensus ADMM: closed-form perspective proxes plus a factored
  /// projection onto the continuity constraints.
  Admm,
};

const char* to_string(SolverMethod m);
SolverMethod parse_solver_method(const std::string& name);

struct SolverConfig {
  SolverMethod method = SolverMethod::InteriorPoint;
  /// Bound on max |D^T J_i - (q_i - q_{i-1})| at return.
  double tol_feasibility = 1e-6;
  /// ADMM: relative objective change over `objective_window` iterations.
  double tol_objective = 1e-6;
  int objective_window = 50;
  /// Newton steps (interior point) or iterations (ADMM).
  int max_iterations = 50000;
  /// ADMM: density floor used when evaluating the objective mid-iteration.
  double epsilon_floor = 1e-10;

  /// Interior point: stop once the duality gap and the last objective change
  /// both fall below barrier_gap * objective.
  double barrier_gap = 1e-9;

  /// ADMM penalty; <= 0 selects k.
  double admm_rho = 0.0;
  int admm_balance_interval = 25;
  double admm_balance_factor = 2.0;

  /// Throws ValidationError when a tolerance or count is not positive.
  void validate() const;
};

struct ConvergenceReport {
  SolverMethod method = SolverMethod::InteriorPoint;
  int iterations = 0;
  /// Continuity residual of the returned path.
  double primal_residual = 0.0;
  /// Stationarity residual (interior point) or consensus dual residual (ADMM).
  double dual_residual = 0.0;
  /// Duality gap x^T z (interior point) or last windowed objective change (ADMM).
  double gap = 0.0;
  std::vector<double> history;
};

/// Staggered path q_0..q_k, J_1..J_k with its energy.
struct TransportPath {
  int k = 0;
  std::vector<std::vector<double>> q;
  std::vector<FlowField> flows;
  double objective = 0.0;  // squared distance
  double distance = 0.0;
  std::vector<double> speeds;
  ConvergenceReport report;
};

/// Solves the staggered problem (see DiscreteProblem). Deterministic.
///
/// Throws InfeasibleTransport when p1 is not reachable from p0 in k steps
/// (the distance is then +infinity) and ConvergenceError when the iteration
/// budget runs out.
TransportPath solve(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1, int k,
                    const SolverConfig& cfg = {});

/// Distance only; +infinity instead of InfeasibleTransport.
double distance(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1, int k,
                const SolverConfig& cfg = {});

/// k * sum_i momentum_norm_squared(q_{i-1}, q_i, J_i). Throws InfeasibleFlow
/// for positive flow through zero density.
double objective(const Graph& g, const std::vector<std::vector<double>>& q,
                 const std::vector<FlowField>& flows, int k);

/// Discrete advective speed of each step, k * sqrt(momentum_norm_squared(q_{i-1}, q_i, J_i)).
/// Squared speeds average to the objective, so at constant speed every entry
/// equals the distance.
std::vector<double> per_step_speeds(const Graph& g, const TransportPath& path);

struct SymmetrizedResult {
  TransportPath forward;   // p0 -> p1
  TransportPath backward;  // p1 -> p0
  double distance = 0.0;   // mean of the two distances
};

SymmetrizedResult solve_symmetrized(const Graph& g, const VertexDistribution& p0,
                                    const VertexDistribution& p1, int k, const SolverConfig& cfg = {});

/// Linear cross-fade q_i = (1 - i/k) p0 + (i/k) p1.
std::vector<std::vector<double>> trivial_path(const VertexDistribution& p0,
                                              const VertexDistribution& p1, int k);

/// Writes meta, q.csv and J.csv into `dir` (created if missing).
void export_path(const std::filesystem::path& dir, const Graph& g, const TransportPath& path);
std::string path_meta(const Graph& g, const TransportPath& path);
/// Rows "i,v0,...": one row per density sample.
std::string densities_csv(const std::vector<std::vector<double>>& q);
/// Rows "i,e0,...": one row per step, canonical oriented-edge order.
std::string flows_csv(const std::vector<FlowField>& flows);

}  // namespace graphot
