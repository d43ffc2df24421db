// Consensus ADMM for the staggered problem.
//
// Every objective term c J^2/d owns a private copy of its flow and, when the
// density is free, of its density. One iteration is
//
//   copies <- prox of each term at (master - u)         (closed form, cubic root)
//   master <- projection of (copies + u) onto A z = b   (weighted, prefactored)
//   u      <- u + copies - master
//
// The projection matrix A W^-1 A^T does not depend on the penalty, so it is
// factored once and penalty balancing only rescales u.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include "graphot/error.hpp"
#include "solver_internal.hpp"

namespace graphot::detail {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

}  // namespace

PerspectiveProx perspective_prox(double x, double y, double c, double rho) {
  if (x <= 0.0) return {0.0, std::max(y, 0.0)};
  const double lam = c / rho;
  auto f = [&](double b) { return (b - y) * (b + 2.0 * lam) * (b + 2.0 * lam) - lam * x * x; };
  const double lo0 = std::max(y, 0.0);
  if (y < 0.0 && f(0.0) >= 0.0) return {0.0, 0.0};

  double lo = lo0, hi = lo0 + std::max(1.0, x);
  while (f(hi) < 0.0) hi = lo0 + 2.0 * (hi - lo0);
  double b = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double fb = f(b);
    if (fb < 0.0)
      lo = b;
    else
      hi = b;
    double df = (b + 2.0 * lam) * (b + 2.0 * lam) + 2.0 * (b - y) * (b + 2.0 * lam);
    double next = b - fb / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - b) <= 1e-12 * std::max(1.0, b)) {
      b = next;
      break;
    }
    b = next;
  }
  return {x * b / (b + 2.0 * lam), b};
}

namespace {

struct Copy {
  int master;  // free-variable index
};

class AdmmSolver {
 public:
  AdmmSolver(const DiscreteProblem& prob, const SolverConfig& cfg) : prob_(prob), cfg_(cfg) {
    const int n = prob.num_vars();
    weight_.assign(static_cast<std::size_t>(n), 0.0);
    const auto& terms = prob.terms();
    flow_copy_.resize(terms.size());
    density_copy_.assign(terms.size(), -1);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      flow_copy_[t] = add_copy(terms[t].flow_var);
      if (terms[t].density_var >= 0) density_copy_[t] = add_copy(terms[t].density_var);
    }
    // Variables that no term touches still need a nonnegativity copy.
    for (int j = 0; j < n; ++j)
      if (weight_[j] == 0.0) orthant_copies_.push_back(add_copy(j));

    const SparseMatrix& a = prob.constraints();
    Vector winv(n);
    for (int j = 0; j < n; ++j) winv[j] = 1.0 / weight_[j];
    a_winv_ = a * winv.asDiagonal();
    SparseMatrix normal = a_winv_ * a.transpose();
    llt_.compute(normal);
    if (llt_.info() != Eigen::Success)
      throw ConvergenceError("projection matrix factorization failed", {});
    winv_ = winv;
  }

  SolveOutcome run() {
    const int n = prob_.num_vars();
    const int nc = static_cast<int>(copies_.size());
    SolveOutcome out;
    out.report.method = SolverMethod::Admm;

    Vector z = project(initial_master());
    Vector y(nc), u = Vector::Zero(nc), ez(nc);
    spread(z, ez);
    y = ez;
    double rho = cfg_.admm_rho > 0.0 ? cfg_.admm_rho : static_cast<double>(prob_.steps());
    std::deque<double> objectives;
    const double c = prob_.term_weight();
    double r = 0.0, s = 0.0, change = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= cfg_.max_iterations; ++it) {
      // Copies.
      Vector v = ez - u;
      const auto& terms = prob_.terms();
      for (std::size_t t = 0; t < terms.size(); ++t) {
        int fc = flow_copy_[t];
        if (density_copy_[t] < 0) {
          double d = terms[t].fixed_density;
          y[fc] = std::max(0.0, v[fc]) * rho * d / (rho * d + 2.0 * c);
        } else {
          int dc = density_copy_[t];
          auto p = perspective_prox(v[fc], v[dc], c, rho);
          y[fc] = p.a;
          y[dc] = p.b;
        }
      }
      for (int oc : orthant_copies_) y[oc] = std::max(0.0, v[oc]);

      // Master.
      Vector z_old = z;
      Vector sum = Vector::Zero(n);
      for (int i = 0; i < nc; ++i) sum[copies_[i].master] += y[i] + u[i];
      z = project(sum.cwiseProduct(winv_));
      spread(z, ez);

      // Duals.
      u += y - ez;
      r = (y - ez).lpNorm<Eigen::Infinity>();
      Vector dz = z - z_old;
      s = 0.0;
      for (int j = 0; j < n; ++j) s = std::max(s, std::abs(dz[j]));
      s *= rho;
      if (it % 25 == 0) out.report.history.push_back(r);

      if (it % cfg_.admm_balance_interval == 0) {
        if (r > 10.0 * s) {
          rho *= cfg_.admm_balance_factor;
          u /= cfg_.admm_balance_factor;
        } else if (s > 10.0 * r) {
          rho /= cfg_.admm_balance_factor;
          u *= cfg_.admm_balance_factor;
        }
      }

      double f = floored_objective(z);
      objectives.push_back(f);
      if (static_cast<int>(objectives.size()) > cfg_.objective_window) {
        double past = objectives.front();
        objectives.pop_front();
        change = std::abs(f - past) / std::max(std::abs(f), 1e-12);
        if (r <= cfg_.tol_feasibility && change <= cfg_.tol_objective) {
          auto x = finalize(z);
          if (prob_.continuity_residual(x) <= cfg_.tol_feasibility) {
            out.x = std::move(x);
            out.report.iterations = it;
            out.report.dual_residual = s;
            out.report.gap = change;
            return out;
          }
        }
      }
    }
    throw ConvergenceError("ADMM did not converge in " + std::to_string(cfg_.max_iterations) +
                               " iterations (consensus residual " + std::to_string(r) +
                               ", objective change " + std::to_string(change) + ")",
                           out.report.history);
  }

 private:
  int add_copy(int master) {
    copies_.push_back({master});
    weight_[master] += 1.0;
    return static_cast<int>(copies_.size()) - 1;
  }

  void spread(const Vector& z, Vector& ez) const {
    ez.resize(static_cast<Eigen::Index>(copies_.size()));
    for (std::size_t i = 0; i < copies_.size(); ++i) ez[static_cast<Eigen::Index>(i)] = z[copies_[i].master];
  }

  // Weighted projection of zbar onto {A z = b}.
  Vector project(const Vector& zbar) const {
    const SparseMatrix& a = prob_.constraints();
    if (a.rows() == 0) return zbar;
    Vector lam = llt_.solve(a * zbar - prob_.rhs());
    return zbar - a_winv_.transpose() * lam;
  }

  // Trivial cross-fade densities, zero flows.
  Vector initial_master() const {
    const int k = prob_.steps();
    Vector z = Vector::Zero(prob_.num_vars());
    for (int j = 0; j < prob_.num_vars(); ++j) {
      const auto& v = prob_.vars()[static_cast<std::size_t>(j)];
      if (v.kind == DiscreteProblem::VarKind::Density) {
        double s = static_cast<double>(v.step) / k;
        z[j] = (1.0 - s) * prob_.source()[v.index] + s * prob_.target()[v.index];
      }
    }
    return z;
  }

  double floored_objective(const Vector& z) const {
    double sum = 0.0;
    for (const auto& term : prob_.terms()) {
      double j = std::max(0.0, z[term.flow_var]);
      if (j == 0.0) continue;
      double d = term.density_var < 0 ? term.fixed_density : z[term.density_var];
      sum += j * j / std::max(d, cfg_.epsilon_floor);
    }
    return prob_.term_weight() * sum;
  }

  // Clips to the orthant and drops flow that meets a zero density.
  std::vector<double> finalize(const Vector& z) const {
    std::vector<double> x(static_cast<std::size_t>(z.size()));
    for (Eigen::Index j = 0; j < z.size(); ++j) x[static_cast<std::size_t>(j)] = std::max(0.0, z[j]);
    for (const auto& term : prob_.terms())
      if (term.density_var >= 0 && x[term.density_var] <= 0.0) x[term.flow_var] = 0.0;
    return x;
  }

  const DiscreteProblem& prob_;
  const SolverConfig& cfg_;
  std::vector<Copy> copies_;
  std::vector<double> weight_;
  std::vector<int> flow_copy_, density_copy_, orthant_copies_;
  SparseMatrix a_winv_;
  Vector winv_;
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt_;
};

}  // namespace

SolveOutcome solve_admm(const DiscreteProblem& prob, const SolverConfig& cfg) {
  if (prob.num_vars() == 0) {
    SolveOutcome out;
    out.report.method = SolverMethod::Admm;
    return out;
  }
  AdmmSolver solver(prob, cfg);
  return solver.run();
}

}  // namespace graphot::detail
