#pragma once

#include <memory>

#include "parkplan/formulations.hpp"
#include "parkplan/scenario.hpp"
#include "parkplan/solver.hpp"
#include "parkplan/trajectory.hpp"

namespace parkplan {

/// Which dynamics the transcription discretizes: the full 5-state vehicle, or
/// the reduced 3-state model with (v, delta) as direct controls (used by the
/// guess pipeline).
enum class ModelKind { Full5, Simplified3 };

struct TranscriptionOptions {
  ModelKind model = ModelKind::Full5;
  bool with_collision = true;
  FormulationKind formulation = FormulationKind::Eq17;
  FormulationMargins margins{};
  double tf_min = 1.0;
  double tf_max = 300.0;
  /// Velocity weight of the reduced model's cost t_f (r + p int v^2 dtau).
  double simplified_p = 1.0;
};

/// Free-final-time multiple-shooting NLP over tau in [0, 1] with dtau = 1/k_f.
///
/// Decision vector layout: states xi(0..k_f), controls u(0..k_f-1), t_f, then
/// per-stage auxiliary blocks for stages 1..k_f (stage-major, obstacle-minor).
/// Equalities: boundary conditions, RK4 shooting defects of the time-scaled
/// dynamics, and the per-block normalization equalities. Inequalities
/// (feasible >= 0): environment containment and collision blocks at stages
/// 1..k_f. State/control/aux boxes are bounds, not residual rows.
class NlpProblem final : public Nlp, public TrajectoryMetrics {
 public:
  NlpProblem(Scenario scenario, int k_f, TranscriptionOptions options);

  // Layout.
  int state_dim() const { return state_dim_; }
  int control_dim() const { return 2; }
  int k_f() const { return k_f_; }
  int state_index(int k) const { return k * state_dim_; }
  int control_index(int k) const { return (k_f_ + 1) * state_dim_ + 2 * k; }
  int tf_index() const { return (k_f_ + 1) * state_dim_ + 2 * k_f_; }
  int aux_index(int stage, int obstacle) const;
  int aux_per_stage() const { return aux_per_stage_; }
  const Scenario& scenario() const { return scenario_; }
  const TranscriptionOptions& options() const { return options_; }
  double dtau() const { return 1.0 / k_f_; }

  // Constraint counts under both reporting conventions.
  int constraint_count() const { return num_eq_ + num_ineq_; }
  int constraint_count_with_bounds() const;

  // Nlp interface.
  int num_vars() const override { return num_vars_; }
  int num_eq() const override { return num_eq_; }
  int num_ineq() const override { return num_ineq_; }
  const VectorXd& lower_bounds() const override { return lower_; }
  const VectorXd& upper_bounds() const override { return upper_; }
  double objective(const VectorXd& z) const override;
  void objective_gradient(const VectorXd& z, VectorXd& grad) const override;
  void equalities(const VectorXd& z, VectorXd& out) const override;
  void inequalities(const VectorXd& z, VectorXd& out) const override;
  void jacobians(const VectorXd& z, SparseMatrixd& eq_jac,
                 SparseMatrixd& ineq_jac) const override;

  // TrajectoryMetrics.
  double final_time(const VectorXd& z) const override { return z(tf_index()); }
  double smoothness(const VectorXd& z) const override;

  /// Packs a full-model trajectory into a decision vector; auxiliary blocks
  /// are seeded from the stage pose geometry.
  VectorXd pack(const Trajectory& traj) const;
  /// Reduced-model variant: states are (x, y, theta), controls (v, delta).
  VectorXd pack_simplified(const std::vector<std::array<double, 3>>& states,
                           const std::vector<std::array<double, 2>>& controls,
                           double t_f) const;

  /// Reads a full-model decision vector back into a trajectory.
  Trajectory extract_trajectory(const VectorXd& z) const;

 private:
  struct Group;
  template <typename T>
  void eval_group(const Group& g, const VectorXd& z, int seed, T* ineq, T* eq) const;
  void check_length(const VectorXd& z) const;

  Scenario scenario_;
  int k_f_;
  TranscriptionOptions options_;
  HalfSpacePolygon body_frame_;
  int state_dim_;
  int aux_per_stage_ = 0;
  std::vector<int> aux_obstacle_offset_;  // within a stage block
  int num_vars_ = 0;
  int num_eq_ = 0;
  int num_ineq_ = 0;
  VectorXd lower_, upper_;
  std::vector<Group> groups_;
};

/// Assembles the benchmark NLP for one scenario and collision formulation.
/// Throws InfeasibleBoundary if either boundary pose already collides.
NlpProblem assemble(const Scenario& scenario, FormulationKind kind, int k_f);

}  // namespace parkplan
