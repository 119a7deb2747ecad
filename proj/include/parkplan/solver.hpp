#pragma once

#include <Eigen/Sparse>
#include <limits>
#include <string>

#include "parkplan/errors.hpp"
#include "parkplan/geometry.hpp"

namespace parkplan {

using SparseMatrixd = Eigen::SparseMatrix<double>;

/// Solver-facing problem: smooth objective, equality residuals c_E(z) = 0,
/// inequality residuals c_I(z) >= 0, and box bounds on z (+-inf allowed).
/// Jacobian sparsity must be identical at every evaluation point.
class Nlp {
 public:
  virtual ~Nlp() = default;

  virtual int num_vars() const = 0;
  virtual int num_eq() const = 0;
  virtual int num_ineq() const = 0;
  virtual const VectorXd& lower_bounds() const = 0;
  virtual const VectorXd& upper_bounds() const = 0;

  virtual double objective(const VectorXd& z) const = 0;
  virtual void objective_gradient(const VectorXd& z, VectorXd& grad) const = 0;
  virtual void equalities(const VectorXd& z, VectorXd& out) const = 0;
  virtual void inequalities(const VectorXd& z, VectorXd& out) const = 0;
  virtual void jacobians(const VectorXd& z, SparseMatrixd& eq_jac,
                         SparseMatrixd& ineq_jac) const = 0;
};

/// Optional mix-in for problems whose decision vector encodes a vehicle
/// trajectory; lets solver plumbing fill the trajectory metrics of a report.
class TrajectoryMetrics {
 public:
  virtual ~TrajectoryMetrics() = default;
  virtual double final_time(const VectorXd& z) const = 0;
  virtual double smoothness(const VectorXd& z) const = 0;
};

struct SolverOptions {
  double kkt_tol = 1e-6;
  int max_iter = 3000;
  double barrier_init = 0.1;        // mu_0
  double barrier_reduction = 0.2;   // multiplicative decrease per barrier stage
  double fraction_to_boundary = 0.995;
  int quasi_newton_memory = 20;     // damped BFGS pairs kept (limited memory)
  bool constraint_scaling = true;   // gradient-based row scaling at z0
  std::string iteration_log_csv;    // empty = no log
};

enum class SolveStatus { Optimal, MaxIter, Infeasible, Diverged };
const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::Diverged;
  VectorXd z;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double t_f = std::numeric_limits<double>::quiet_NaN();
  double smoothness_ts = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double wall_ms = 0.0;
  int num_vars = 0;
  int num_constraints = 0;              // equality + inequality residual rows
  int num_constraints_with_bounds = 0;  // plus finite variable bounds
  double kkt_residual = std::numeric_limits<double>::quiet_NaN();
  double max_eq_violation = std::numeric_limits<double>::quiet_NaN();
  double min_ineq_value = std::numeric_limits<double>::quiet_NaN();
};

/// Pluggable NLP backend; the bundled interior-point method is the default.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveReport solve(const Nlp& problem, const VectorXd& z0,
                            const SolverOptions& opts) = 0;
};

/// Bundled primal-dual interior-point method: slacked inequalities, log
/// barriers on slacks and bounds, l1-penalty line search with adaptive
/// penalty, damped limited-memory BFGS Lagrangian Hessian, fraction-to-
/// boundary rule, and an inertia-correcting diagonal shift on the KKT system.
/// Never throws on numerical failure; reports Diverged instead.
class InteriorPointSolver final : public SolverBackend {
 public:
  std::string name() const override { return "bundled-ipm"; }
  SolveReport solve(const Nlp& problem, const VectorXd& z0,
                    const SolverOptions& opts) override;
};

/// Solves with the bundled interior-point backend. z0 is box-clipped before
/// use; trajectory metrics are filled when the problem provides them.
SolveReport solve(const Nlp& problem, const VectorXd& z0, const SolverOptions& opts = {});

/// Same report schema through an arbitrary backend; objective and trajectory
/// metrics are recomputed from the returned point. Throws BackendUnavailable
/// on a null backend or a backend failure.
SolveReport solve_with_backend(const Nlp& problem, const VectorXd& z0,
                               SolverBackend* backend, const SolverOptions& opts = {});

}  // namespace parkplan
