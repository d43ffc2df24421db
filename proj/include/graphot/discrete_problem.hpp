#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "graphot/distribution.hpp"
#include "graphot/graph.hpp"

namespace graphot {

/// The staggered space-time problem for k time steps between p0 and p1:
///
///   minimize  k * sum_i sum_{e=v->w} J_i(e)^2/2 * (1/q_{i-1}(v) + 1/q_i(w))
///   s.t.      q_0 = p0, q_k = p1,  D^T J_i = q_i - q_{i-1},  J, q >= 0.
///
/// Mass travels at most one hop per step, so q_i(v) can only be positive when
/// v is within i hops of supp(p0) and within k-i hops of supp(p1), and J_i(v->w)
/// only when both of its densities can be positive. Everything else is fixed
/// at zero and removed; what remains is a vector x of free variables
/// with linear constraints A x = b of full row rank.
///
/// Construction throws InfeasibleTransport when no k-step path exists, i.e.
/// when no coupling of p0 and p1 moves mass by at most k hops.
class DiscreteProblem {
 public:
  /// One summand c * J^2 / d of the objective. `density_var` < 0 means the
  /// density is the fixed boundary value `fixed_density` (always > 0).
  struct Term {
    int flow_var;
    int density_var;
    double fixed_density;
  };

  enum class VarKind { Flow, Density };
  struct VarInfo {
    VarKind kind;
    int step;   // flows: 1..k, densities: 1..k-1
    int index;  // oriented edge or vertex
  };

  DiscreteProblem(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1, int k);

  const Graph& graph() const noexcept { return *graph_; }
  const VertexDistribution& source() const noexcept { return p0_; }
  const VertexDistribution& target() const noexcept { return p1_; }
  int steps() const noexcept { return k_; }

  int num_vars() const noexcept { return static_cast<int>(vars_.size()); }
  int num_flow_vars() const noexcept { return num_flow_vars_; }
  int num_density_vars() const noexcept { return num_vars() - num_flow_vars_; }
  const std::vector<VarInfo>& vars() const noexcept { return vars_; }

  /// Variable index of J_i(r), or -1 when fixed at zero. i in 1..k.
  int flow_var(int i, int r) const;
  /// Variable index of q_i(v), or -1 when fixed. i in 0..k.
  int density_var(int i, Vertex v) const;
  /// Value of q_i(v) when it is not a variable.
  double fixed_density(int i, Vertex v) const;

  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// Coefficient c of every term (k/2).
  double term_weight() const noexcept { return 0.5 * k_; }

  /// Continuity constraints restricted to the free variables; redundant rows
  /// (one per connected block of the time-expanded network) are dropped.
  const Eigen::SparseMatrix<double>& constraints() const noexcept { return a_; }
  const Eigen::VectorXd& rhs() const noexcept { return b_; }

  /// Objective k * sum c-weighted terms at free-variable values x. Returns
  /// +inf if a positive flow meets a nonpositive density.
  double objective(std::span<const double> x) const;

  /// Expands free variables into full densities q_0..q_k and flows J_1..J_k.
  void expand(std::span<const double> x, std::vector<std::vector<double>>& q,
              std::vector<FlowField>& flows) const;

  /// Largest |D^T J_i - (q_i - q_{i-1})| over all steps and vertices.
  double continuity_residual(std::span<const double> x) const;

 private:
  const Graph* graph_;
  VertexDistribution p0_, p1_;
  int k_;
  int num_flow_vars_ = 0;
  std::vector<int> flow_var_;     // k x 2m
  std::vector<int> density_var_;  // (k+1) x n
  std::vector<VarInfo> vars_;
  std::vector<Term> terms_;
  Eigen::SparseMatrix<double> a_;
  Eigen::VectorXd b_;
};

/// Largest possible supports of q_0..q_k over all finite-energy staggered
/// paths from p0 to p1, as masks [i][v]; empty when no such path exists.
/// Flow on v -> w during step i needs q_{i-1}(v) > 0 and q_i(w) > 0, so mass
/// can cross several hops in one step through vertices positive at both ends
/// of it. Decided by repeated max-flow on a time-expanded network.
std::vector<std::vector<char>> admissible_supports(const Graph& g, const VertexDistribution& p0,
                                                   const VertexDistribution& p1, int k);

/// True when p1 can be reached from p0 in k staggered steps.
bool reachable_within(const Graph& g, const VertexDistribution& p0, const VertexDistribution& p1,
                      int k);

}  // namespace graphot
