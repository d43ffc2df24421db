#pragma once

#include <vector>

#include "graphot/discrete_problem.hpp"
#include "graphot/flow_solver.hpp"

namespace graphot::detail {

struct SolveOutcome {
  std::vector<double> x;  // free variables of the DiscreteProblem
  ConvergenceReport report;
};

SolveOutcome solve_interior_point(const DiscreteProblem& prob, const SolverConfig& cfg);
SolveOutcome solve_admm(const DiscreteProblem& prob, const SolverConfig& cfg);

/// Minimizer over (a >= 0, b >= 0) of  c a^2/b + rho/2 ((a-x)^2 + (b-y)^2),
/// with the perspective closure (0 at a = b = 0, +inf for a > 0 = b).
struct PerspectiveProx {
  double a;
  double b;
};
PerspectiveProx perspective_prox(double x, double y, double c, double rho);

}  // namespace graphot::detail
