// Primal-dual interior point method for the staggered problem
//
//   minimize f(x)  subject to  A x = b,  x >= 0.
//
// Phase one runs damped Newton on the barrier f - mu0 sum log x from a
// positive infeasible point until A x = b holds and the barrier is centered.
// Phase two is a Mehrotra predictor-corrector on the perturbed KKT
// conditions  grad f + A^T nu - z = 0,  A x = b,  x z = sigma mu.  Every
// iteration factors the quasi-definite system
//
//   [ Hess f + X^-1 Z   A^T ] [dx ]
//   [ A                 -dI ] [dnu]
//
// once and solves it twice. f is not quadratic, so steps backtrack on the
// barrier merit f - sigma mu sum log x, along which the computed direction is
// a descent direction while feasibility holds.

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include "graphot/error.hpp"
#include "solver_internal.hpp"

namespace graphot::detail {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// The system is factored in the symmetric scaling S = diag(x, I),
//
//   [ X (Hess f + B) X   X A^T ]
//   [ A X               -dI    ],
//
// because each energy term has a rank-one Hessian of size 1/d: unscaled,
// eliminating a flow next to a nearly empty density cancels catastrophically.
class KktSystem {
 public:
  KktSystem(const DiscreteProblem& prob, double delta)
      : prob_(prob), n_(prob.num_vars()), m_(static_cast<int>(prob.constraints().rows())),
        delta_(delta), scale_(Vector::Ones(n_ + m_)) {
    const SparseMatrix& a = prob.constraints();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n_ + a.nonZeros() + m_) + prob.terms().size());
    for (int j = 0; j < n_; ++j) trips.emplace_back(j, j, 1.0);
    for (const auto& term : prob.terms())
      if (term.density_var >= 0) trips.emplace_back(term.density_var, term.flow_var, 0.0);
    for (int col = 0; col < a.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(a, col); it; ++it)
        trips.emplace_back(n_ + static_cast<int>(it.row()), col, it.value());
    for (int r = 0; r < m_; ++r) trips.emplace_back(n_ + r, n_ + r, -delta_);
    k_.resize(n_ + m_, n_ + m_);
    k_.setFromTriplets(trips.begin(), trips.end());
    k_.makeCompressed();

    diag_pos_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) diag_pos_[j] = position(j, j);
    dual_pos_.resize(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) dual_pos_[r] = position(n_ + r, n_ + r);
    term_pos_.assign(prob.terms().size(), -1);
    for (std::size_t t = 0; t < prob.terms().size(); ++t) {
      const auto& term = prob.terms()[t];
      if (term.density_var >= 0) term_pos_[t] = position(term.density_var, term.flow_var);
    }
    for (int col = 0; col < a.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(a, col); it; ++it)
        a_entries_.push_back({position(n_ + static_cast<int>(it.row()), col), col, it.value()});
    ldlt_.analyzePattern(k_);
  }

  // Hessian of f plus the diagonal `barrier`, scaled by x.
  void assemble(const std::vector<double>& x, const Vector& barrier) {
    for (int j = 0; j < n_; ++j) scale_[j] = x[j];
    double* values = k_.valuePtr();
    const double c = prob_.term_weight();
    for (int j = 0; j < n_; ++j) values[diag_pos_[j]] = barrier[j] * x[j] * x[j];
    const auto& terms = prob_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& term = terms[i];
      double flow = x[term.flow_var];
      double d = term.density_var < 0 ? term.fixed_density : x[term.density_var];
      values[diag_pos_[term.flow_var]] += 2.0 * c * flow * flow / d;
      if (term.density_var >= 0) {
        // x_d^2 J^2 / d^3 and x_J x_d J / d^2 with x_d = d, x_J = J.
        values[diag_pos_[term.density_var]] += 2.0 * c * flow * flow / d;
        values[term_pos_[i]] = -2.0 * c * flow * flow / d;
      }
    }
    for (const auto& e : a_entries_) values[e.pos] = e.value * x[e.col];
    top_ = 0.0;
    for (int j = 0; j < n_; ++j) top_ = std::max(top_, values[diag_pos_[j]]);
    rho_ = 0.0;
  }

  // The pivot-free LDL^T of a quasi-definite matrix can still hit an exact
  // zero pivot when the dual Schur complement cancels. Retry with stronger
  // primal and dual regularization; solve() refines against the exact matrix.
  bool factorize() {
    double* values = k_.valuePtr();
    double rel = 1e-12, dual = delta_;
    for (int attempt = 0; attempt < 5; ++attempt, rel *= 100.0, dual *= 100.0) {
      const double rho = rel * top_;
      for (int j = 0; j < n_; ++j) values[diag_pos_[j]] += rho - rho_;
      for (int r = 0; r < m_; ++r) values[dual_pos_[r]] = -dual;
      rho_ = rho;
      reg_dual_ = dual;
      ldlt_.factorize(k_);
      if (ldlt_.info() == Eigen::Success) return true;
    }
    return false;
  }

  // Solves the unscaled, unregularized system, refining until the residual
  // stops improving (at most five sweeps).
  Vector solve(const Vector& rhs) const {
    auto raw = [&](const Vector& r) -> Vector { return scale_.cwiseProduct(ldlt_.solve(scale_.cwiseProduct(r))); };
    Vector sol = raw(rhs);
    const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    double last = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < 5; ++sweep) {
      Vector res = rhs - apply(sol);
      double norm = res.lpNorm<Eigen::Infinity>();
      if (norm <= 1e-15 * scale || norm >= 0.5 * last) break;
      last = norm;
      sol += raw(res);
    }
    return sol;
  }

  // dx^T (Hess f + B) dx using the assembled primal block.
  double hessian_norm(const Vector& dx) const {
    Vector full = Vector::Zero(n_ + m_);
    full.head(n_) = dx.cwiseQuotient(scale_.head(n_));
    Vector prod = k_.selfadjointView<Eigen::Lower>() * full;
    return full.head(n_).dot(prod.head(n_)) - rho_ * full.head(n_).squaredNorm();
  }

 private:
  struct AEntry {
    int pos, col;
    double value;
  };

  // Unscaled, unregularized K v.
  Vector apply(const Vector& v) const {
    Vector u = v.cwiseQuotient(scale_);
    Vector out = k_.selfadjointView<Eigen::Lower>() * u;
    out.head(n_) -= rho_ * u.head(n_);
    out.tail(m_) += reg_dual_ * u.tail(m_);
    return out.cwiseQuotient(scale_);
  }

  int position(int row, int col) const {
    const int* inner = k_.innerIndexPtr();
    const int begin = k_.outerIndexPtr()[col], end = k_.outerIndexPtr()[col + 1];
    const int* it = std::lower_bound(inner + begin, inner + end, row);
    return static_cast<int>(it - inner);
  }

  const DiscreteProblem& prob_;
  int n_, m_;
  double delta_, rho_ = 0.0, reg_dual_ = 0.0, top_ = 0.0;
  std::vector<int> dual_pos_;
  Vector scale_;
  SparseMatrix k_;
  std::vector<int> diag_pos_, term_pos_;
  std::vector<AEntry> a_entries_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
};

// f(x) - mu sum log x, +inf outside the open orthant.
double barrier_value(const DiscreteProblem& prob, const std::vector<double>& x, double mu) {
  double logs = 0.0;
  for (double xi : x) {
    if (!(xi > 0.0)) return std::numeric_limits<double>::infinity();
    logs += std::log(xi);
  }
  return prob.objective(x) - mu * logs;
}

Vector barrier_gradient(const DiscreteProblem& prob, const std::vector<double>& x, double mu) {
  Vector g(static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) g[static_cast<Eigen::Index>(j)] = -mu / x[j];
  const double c = prob.term_weight();
  for (const auto& term : prob.terms()) {
    double flow = x[term.flow_var];
    double d = term.density_var < 0 ? term.fixed_density : x[term.density_var];
    g[term.flow_var] += 2.0 * c * flow / d;
    if (term.density_var >= 0) g[term.density_var] -= c * flow * flow / (d * d);
  }
  return g;
}

Vector primal_residual(const DiscreteProblem& prob, const std::vector<double>& x) {
  Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  return prob.constraints() * xv - prob.rhs();
}

// Largest step in [0, 1] keeping x + alpha dx strictly positive.
double max_positive_step(const std::vector<double>& x, const Vector& dx) {
  double alpha = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = dx[static_cast<Eigen::Index>(j)];
    if (d < 0.0) alpha = std::min(alpha, -0.99 * x[j] / d);
  }
  return alpha;
}

std::vector<double> stepped(const std::vector<double>& x, const Vector& dx, double alpha) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + alpha * dx[static_cast<Eigen::Index>(j)];
  return out;
}

// Positive starting point: densities spread evenly over each slice's free
// vertices and a small flow on every free edge.
std::vector<double> initial_point(const DiscreteProblem& prob) {
  const int k = prob.steps();
  std::vector<int> density_count(static_cast<std::size_t>(k) + 1, 0);
  std::vector<int> flow_count(static_cast<std::size_t>(k) + 1, 0);
  for (const auto& v : prob.vars()) {
    if (v.kind == DiscreteProblem::VarKind::Density)
      ++density_count[v.step];
    else
      ++flow_count[v.step];
  }
  std::vector<double> x(prob.vars().size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& v = prob.vars()[j];
    x[j] = v.kind == DiscreteProblem::VarKind::Density ? 1.0 / density_count[v.step]
                                                        : 1.0 / flow_count[v.step];
  }
  return x;
}

}  // namespace

SolveOutcome solve_interior_point(const DiscreteProblem& prob, const SolverConfig& cfg) {
  SolveOutcome out;
  out.report.method = SolverMethod::InteriorPoint;
  const int n = prob.num_vars();
  const int m = static_cast<int>(prob.constraints().rows());
  if (n == 0) return out;
  const SparseMatrix& a = prob.constraints();

  const double feasible_tol = 1e-11 * std::max(1.0, prob.rhs().cwiseAbs().maxCoeff());
  KktSystem kkt(prob, 1e-10);
  std::vector<double> x = initial_point(prob);
  Vector nu = Vector::Zero(m);
  const double f0 = prob.objective(x);
  const double mu0 = std::isfinite(f0) ? std::max(f0 / n, 1e-6) : 1.0;
  int factorizations = 0;

  auto factor = [&](const Vector& barrier) {
    if (factorizations >= cfg.max_iterations)
      throw ConvergenceError("interior point exceeded " + std::to_string(cfg.max_iterations) +
                                 " Newton steps",
                             out.report.history);
    ++factorizations;
    kkt.assemble(x, barrier);
    if (!kkt.factorize()) throw ConvergenceError("KKT factorization failed", out.report.history);
  };
  auto x_vec = [&] { return Eigen::Map<const Vector>(x.data(), n); };

  // Phase one: Newton on the mu0 barrier until feasible and centered.
  for (bool feasible = false;;) {
    Vector xv = x_vec();
    factor(mu0 * xv.cwiseInverse().cwiseAbs2());
    Vector g = barrier_gradient(prob, x, mu0);
    Vector rp = primal_residual(prob, x);
    feasible = feasible || rp.lpNorm<Eigen::Infinity>() <= feasible_tol;
    Vector rhs(n + m);
    if (!feasible) {
      Vector rd = g + a.transpose() * nu;
      rhs << -rd, -rp;
      Vector sol = kkt.solve(rhs);
      Vector dx = sol.head(n), dnu = sol.tail(m);
      const double r0 = std::sqrt(rd.squaredNorm() + rp.squaredNorm());
      double alpha = max_positive_step(x, dx);
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        auto xt = stepped(x, dx, alpha);
        Vector nut = nu + alpha * dnu;
        Vector rdt = barrier_gradient(prob, xt, mu0) + a.transpose() * nut;
        Vector rpt = primal_residual(prob, xt);
        if (std::sqrt(rdt.squaredNorm() + rpt.squaredNorm()) <= (1.0 - 0.01 * alpha) * r0 || ls == 59) {
          x = std::move(xt);
          nu = nut;
          break;
        }
      }
      continue;
    }
    rhs << -g, -rp;
    Vector sol = kkt.solve(rhs);
    Vector dx = sol.head(n);
    nu = sol.tail(m);
    if (0.5 * kkt.hessian_norm(dx) <= 1e-2 * n * mu0) break;
    const double slope = g.dot(dx);
    if (!(slope < 0.0)) break;
    const double phi0 = barrier_value(prob, x, mu0);
    double alpha = max_positive_step(x, dx);
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      auto xt = stepped(x, dx, alpha);
      if (xt == x) break;
      if (barrier_value(prob, xt, mu0) <= phi0 + 0.25 * alpha * slope) {
        x = std::move(xt);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  // Phase two: predictor-corrector from the centered point.
  Vector z = mu0 * x_vec().cwiseInverse();
  auto objective_gradient = [&] { return barrier_gradient(prob, x, 0.0); };
  auto max_step = [](const Vector& v, const Vector& dv) {
    double alpha = 1.0;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (dv[j] < 0.0) alpha = std::min(alpha, -v[j] / dv[j]);
    return alpha;
  };

  double gap = std::numeric_limits<double>::infinity(), dual_res = 0.0;
  double f_prev = std::numeric_limits<double>::infinity();
  for (;;) {
    Vector xv = x_vec();
    Vector grad = objective_gradient();
    Vector rd = grad + a.transpose() * nu - z;
    Vector rp = primal_residual(prob, x);
    const double f = prob.objective(x);
    gap = xv.dot(z);
    dual_res = rd.lpNorm<Eigen::Infinity>();
    out.report.history.push_back(gap);
    // The dual residual is not a usable test: near empty densities the
    // gradient has entries of size J^2/d^2. The objective settling is.
    const bool settled = std::abs(f_prev - f) <= cfg.barrier_gap * f;
    f_prev = f;
    if ((gap <= cfg.barrier_gap * f && settled) || gap <= 1e-14) break;

    const double mu = gap / n;
    factor(z.cwiseQuotient(xv));
    auto direction = [&](double target, const Vector& corr, Vector& dx, Vector& dnu, Vector& dz) {
      Vector rhs(n + m);
      rhs.head(n) = -(grad + a.transpose() * nu) + (Vector::Constant(n, target) - corr).cwiseQuotient(xv);
      rhs.tail(m) = -rp;
      Vector sol = kkt.solve(rhs);
      dx = sol.head(n);
      dnu = sol.tail(m);
      dz = (Vector::Constant(n, target) - corr).cwiseQuotient(xv) - z - z.cwiseProduct(dx).cwiseQuotient(xv);
    };

    Vector dx, dnu, dz;
    direction(0.0, Vector::Zero(n), dx, dnu, dz);
    const double ap = max_step(xv, dx), ad = max_step(z, dz);
    const double mu_aff = (xv + ap * dx).dot(z + ad * dz) / n;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
    const double target = sigma * mu;
    Vector corr = dx.cwiseProduct(dz);
    direction(target, corr, dx, dnu, dz);

    // Merit: barrier at the target; fall back to the pure centering
    // direction when the corrector is not a descent direction.
    auto merit_slope = [&](const Vector& d) { return (grad - target * xv.cwiseInverse()).dot(d); };
    if (!(merit_slope(dx) < 0.0)) direction(target, Vector::Zero(n), dx, dnu, dz);
    const double slope = merit_slope(dx);
    double alpha = std::min(1.0, 0.995 * std::min(max_step(xv, dx), max_step(z, dz)));
    const double phi0 = barrier_value(prob, x, target);
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      auto xt = stepped(x, dx, alpha);
      // x pinned by the constraints: only the duals move.
      if (xt == x || !(slope < 0.0) || barrier_value(prob, xt, target) <= phi0 + 1e-4 * alpha * slope) {
        x = std::move(xt);
        moved = true;
        break;
      }
    }
    if (!moved) {
      // Round-off floor. Accept a point that is already accurate.
      if (gap <= 1e-6 * std::max(1.0, f)) break;
      throw ConvergenceError("interior point stalled with gap " + std::to_string(gap), out.report.history);
    }
    nu += alpha * dnu;
    z += alpha * dz;
    // Keep z within a wide band around the central path.
    Vector xn = x_vec();
    const double mu_new = xn.dot(z) / n;
    for (int j = 0; j < n; ++j) z[j] = std::clamp(z[j], mu_new / (1e10 * xn[j]), 1e10 * mu_new / xn[j]);
  }

  out.report.iterations = factorizations;
  out.report.gap = gap;
  out.report.dual_residual = dual_res;
  out.x = std::move(x);
  return out;
}

}  // namespace graphot::detail
