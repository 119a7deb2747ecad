#include "parkplan/transcription.hpp"

#include <cmath>

namespace parkplan {

struct NlpProblem::Group {
  enum class Kind { BoundaryInit, BoundaryFinal, Defect, Containment, Collision };
  Kind kind;
  int stage = 0;
  int obstacle = 0;
  int eq_offset = 0;
  int eq_count = 0;
  int ineq_offset = 0;
  int ineq_count = 0;
  std::vector<int> vars;
};

namespace {

void check_boundary_pose(const Scenario& scenario, const VehicleState& state,
                         const char* which) {
  const HalfSpacePolygon body = body_polygon(state, scenario.vehicle);
  for (const Vector2d& corner : body.vertices()) {
    if (!scenario.environment.contains_point(corner)) {
      throw InfeasibleBoundary(std::string(which) +
                               " body polygon leaves the environment");
    }
  }
  for (const HalfSpacePolygon& obs : scenario.obstacles) {
    if (!sat_disjoint(body, obs).disjoint) {
      throw InfeasibleBoundary(std::string(which) + " body polygon collides an obstacle");
    }
  }
}

}  // namespace

NlpProblem::NlpProblem(Scenario scenario, int k_f, TranscriptionOptions options)
    : scenario_(std::move(scenario)),
      k_f_(k_f),
      options_(options),
      body_frame_(body_frame_polygon(scenario_.vehicle)),
      state_dim_(options.model == ModelKind::Full5 ? 5 : 3) {
  if (k_f_ < 2) throw Error("NlpProblem: k_f must be >= 2");
  scenario_.validate();
  check_boundary_pose(scenario_, scenario_.init_state, "initial");
  check_boundary_pose(scenario_, scenario_.final_state, "final");

  const int n_v = body_frame_.num_edges();
  const int n_obs = static_cast<int>(scenario_.obstacles.size());
  if (options_.with_collision) {
    for (const HalfSpacePolygon& obs : scenario_.obstacles) {
      aux_obstacle_offset_.push_back(aux_per_stage_);
      aux_per_stage_ += aux_count(options_.formulation, n_v, obs.num_edges());
    }
  }
  num_vars_ = state_dim_ * (k_f_ + 1) + 2 * k_f_ + 1 + k_f_ * aux_per_stage_;

  // Bounds.
  lower_.resize(num_vars_);
  upper_.resize(num_vars_);
  std::array<double, 5> slo, sup;
  std::array<double, 2> clo, cup;
  if (options_.model == ModelKind::Full5) {
    slo = scenario_.bounds.state_lower;
    sup = scenario_.bounds.state_upper;
    clo = scenario_.bounds.control_lower;
    cup = scenario_.bounds.control_upper;
  } else {
    // Reduced model: pose states, (v, delta) as controls.
    slo = scenario_.bounds.state_lower;
    sup = scenario_.bounds.state_upper;
    clo = {scenario_.bounds.state_lower[3], scenario_.bounds.state_lower[4]};
    cup = {scenario_.bounds.state_upper[3], scenario_.bounds.state_upper[4]};
  }
  for (int k = 0; k <= k_f_; ++k) {
    for (int i = 0; i < state_dim_; ++i) {
      lower_(state_index(k) + i) = slo[i];
      upper_(state_index(k) + i) = sup[i];
    }
  }
  for (int k = 0; k < k_f_; ++k) {
    for (int i = 0; i < 2; ++i) {
      lower_(control_index(k) + i) = clo[i];
      upper_(control_index(k) + i) = cup[i];
    }
  }
  lower_(tf_index()) = options_.tf_min;
  upper_(tf_index()) = options_.tf_max;
  if (options_.with_collision) {
    for (int k = 1; k <= k_f_; ++k) {
      for (int o = 0; o < n_obs; ++o) {
        const AuxLayout layout =
            aux_layout(options_.formulation, n_v, scenario_.obstacles[o].num_edges());
        const int base = aux_index(k, o);
        lower_.segment(base, layout.per_pair_count) = layout.lower_bounds;
        upper_.segment(base, layout.per_pair_count) = layout.upper_bounds;
      }
    }
  }

  // Residual groups, in canonical row order.
  auto state_vars = [&](int k) {
    std::vector<int> v(state_dim_);
    for (int i = 0; i < state_dim_; ++i) v[i] = state_index(k) + i;
    return v;
  };

  Group init{Group::Kind::BoundaryInit, 0, 0, 0, state_dim_, 0, 0, state_vars(0)};
  num_eq_ += state_dim_;
  Group fin{Group::Kind::BoundaryFinal, k_f_, 0, num_eq_, state_dim_, 0, 0,
            state_vars(k_f_)};
  num_eq_ += state_dim_;
  groups_.push_back(init);
  groups_.push_back(fin);

  for (int k = 0; k < k_f_; ++k) {
    Group g;
    g.kind = Group::Kind::Defect;
    g.stage = k;
    g.eq_offset = num_eq_;
    g.eq_count = state_dim_;
    g.vars = state_vars(k);
    g.vars.push_back(control_index(k));
    g.vars.push_back(control_index(k) + 1);
    g.vars.push_back(tf_index());
    for (int i = 0; i < state_dim_; ++i) g.vars.push_back(state_index(k + 1) + i);
    num_eq_ += state_dim_;
    groups_.push_back(std::move(g));
  }

  const int n_w = scenario_.environment.num_edges();
  for (int k = 1; k <= k_f_; ++k) {
    Group g;
    g.kind = Group::Kind::Containment;
    g.stage = k;
    g.ineq_offset = num_ineq_;
    g.ineq_count = n_w * n_v;
    g.vars = {state_index(k), state_index(k) + 1, state_index(k) + 2};
    num_ineq_ += g.ineq_count;
    groups_.push_back(std::move(g));

    if (!options_.with_collision) continue;
    for (int o = 0; o < n_obs; ++o) {
      const BlockShape shape =
          block_shape(options_.formulation, n_v, scenario_.obstacles[o].num_edges());
      Group c;
      c.kind = Group::Kind::Collision;
      c.stage = k;
      c.obstacle = o;
      c.ineq_offset = num_ineq_;
      c.ineq_count = shape.num_ineq;
      c.eq_offset = num_eq_;
      c.eq_count = shape.num_eq;
      c.vars = {state_index(k), state_index(k) + 1, state_index(k) + 2};
      const int aux_base = aux_index(k, o);
      const int aux_n =
          aux_count(options_.formulation, n_v, scenario_.obstacles[o].num_edges());
      for (int i = 0; i < aux_n; ++i) c.vars.push_back(aux_base + i);
      num_ineq_ += shape.num_ineq;
      num_eq_ += shape.num_eq;
      groups_.push_back(std::move(c));
    }
  }
}

int NlpProblem::aux_index(int stage, int obstacle) const {
  return tf_index() + 1 + (stage - 1) * aux_per_stage_ + aux_obstacle_offset_[obstacle];
}

int NlpProblem::constraint_count_with_bounds() const {
  int n = constraint_count();
  for (int i = 0; i < num_vars_; ++i) {
    if (std::isfinite(lower_(i))) ++n;
    if (std::isfinite(upper_(i))) ++n;
  }
  return n;
}

void NlpProblem::check_length(const VectorXd& z) const {
  if (z.size() != num_vars_) {
    throw LengthMismatch("NlpProblem: decision vector has length " +
                         std::to_string(z.size()) + ", expected " +
                         std::to_string(num_vars_));
  }
}

double NlpProblem::objective(const VectorXd& z) const {
  check_length(z);
  const double tf = z(tf_index());
  double energy = 0.0;
  for (int k = 0; k < k_f_; ++k) {
    const double u0 = z(control_index(k));
    const double u1 = z(control_index(k) + 1);
    if (options_.model == ModelKind::Full5) {
      energy += scenario_.weights.p_diag.x() * u0 * u0 +
                scenario_.weights.p_diag.y() * u1 * u1;
    } else {
      energy += options_.simplified_p * u0 * u0;
    }
  }
  return tf * (scenario_.weights.r + energy * dtau());
}

void NlpProblem::objective_gradient(const VectorXd& z, VectorXd& grad) const {
  check_length(z);
  grad.setZero(num_vars_);
  const double tf = z(tf_index());
  double energy = 0.0;
  for (int k = 0; k < k_f_; ++k) {
    const double u0 = z(control_index(k));
    const double u1 = z(control_index(k) + 1);
    if (options_.model == ModelKind::Full5) {
      energy += scenario_.weights.p_diag.x() * u0 * u0 +
                scenario_.weights.p_diag.y() * u1 * u1;
      grad(control_index(k)) = tf * dtau() * 2.0 * scenario_.weights.p_diag.x() * u0;
      grad(control_index(k) + 1) = tf * dtau() * 2.0 * scenario_.weights.p_diag.y() * u1;
    } else {
      energy += options_.simplified_p * u0 * u0;
      grad(control_index(k)) = tf * dtau() * 2.0 * options_.simplified_p * u0;
    }
  }
  grad(tf_index()) = scenario_.weights.r + energy * dtau();
}

template <typename T>
void NlpProblem::eval_group(const Group& g, const VectorXd& z, int seed, T* ineq,
                            T* eq) const {
  auto at = [&](int idx) -> T {
    if constexpr (std::is_same_v<T, double>) {
      return z(idx);
    } else {
      return Dual(z(idx), idx == seed ? 1.0 : 0.0);
    }
  };

  switch (g.kind) {
    case Group::Kind::BoundaryInit:
    case Group::Kind::BoundaryFinal: {
      const bool init = g.kind == Group::Kind::BoundaryInit;
      const std::array<double, 5> target =
          (init ? scenario_.init_state : scenario_.final_state).as_array();
      const int base = state_index(init ? 0 : k_f_);
      for (int i = 0; i < state_dim_; ++i) eq[i] = at(base + i) - target[i];
      break;
    }
    case Group::Kind::Defect: {
      const int k = g.stage;
      const T h = at(tf_index()) * T(dtau());
      std::array<T, 2> u = {at(control_index(k)), at(control_index(k) + 1)};
      if (options_.model == ModelKind::Full5) {
        std::array<T, 5> xi;
        for (int i = 0; i < 5; ++i) xi[i] = at(state_index(k) + i);
        const std::array<T, 5> next = rk4_step(xi, u, h, scenario_.vehicle);
        for (int i = 0; i < 5; ++i) eq[i] = at(state_index(k + 1) + i) - next[i];
      } else {
        std::array<T, 3> xi;
        for (int i = 0; i < 3; ++i) xi[i] = at(state_index(k) + i);
        const std::array<T, 3> next = rk4_step_simplified(xi, u, h, scenario_.vehicle);
        for (int i = 0; i < 3; ++i) eq[i] = at(state_index(k + 1) + i) - next[i];
      }
      break;
    }
    case Group::Kind::Containment: {
      const int base = state_index(g.stage);
      const PosedBody<T> body =
          pose_body<T>(body_frame_, at(base), at(base + 1), at(base + 2));
      eval_containment(body, scenario_.environment, ineq);
      break;
    }
    case Group::Kind::Collision: {
      const int base = state_index(g.stage);
      const PosedBody<T> body =
          pose_body<T>(body_frame_, at(base), at(base + 1), at(base + 2));
      const HalfSpacePolygon& obs = scenario_.obstacles[g.obstacle];
      const int aux_base = aux_index(g.stage, g.obstacle);
      const int aux_n = aux_count(options_.formulation, body_frame_.num_edges(),
                                  obs.num_edges());
      std::vector<T> aux(aux_n);
      for (int i = 0; i < aux_n; ++i) aux[i] = at(aux_base + i);
      eval_collision(options_.formulation, body, obs, options_.margins, aux.data(), ineq,
                     eq);
      break;
    }
  }
}

void NlpProblem::equalities(const VectorXd& z, VectorXd& out) const {
  check_length(z);
  out.resize(num_eq_);
  std::vector<double> ineq_scratch;
  for (const Group& g : groups_) {
    ineq_scratch.resize(g.ineq_count);
    eval_group<double>(g, z, -1, ineq_scratch.data(), out.data() + g.eq_offset);
  }
}

void NlpProblem::inequalities(const VectorXd& z, VectorXd& out) const {
  check_length(z);
  out.resize(num_ineq_);
  std::vector<double> eq_scratch;
  for (const Group& g : groups_) {
    eq_scratch.resize(g.eq_count);
    eval_group<double>(g, z, -1, out.data() + g.ineq_offset, eq_scratch.data());
  }
}

void NlpProblem::jacobians(const VectorXd& z, SparseMatrixd& eq_jac,
                           SparseMatrixd& ineq_jac) const {
  check_length(z);
  std::vector<Eigen::Triplet<double>> eq_trips, ineq_trips;
  std::vector<Dual> ineq_buf, eq_buf;
  for (const Group& g : groups_) {
    ineq_buf.resize(g.ineq_count);
    eq_buf.resize(g.eq_count);
    for (const int var : g.vars) {
      eval_group<Dual>(g, z, var, ineq_buf.data(), eq_buf.data());
      for (int r = 0; r < g.ineq_count; ++r) {
        if (ineq_buf[r].dot != 0.0) {
          ineq_trips.emplace_back(g.ineq_offset + r, var, ineq_buf[r].dot);
        }
      }
      for (int r = 0; r < g.eq_count; ++r) {
        if (eq_buf[r].dot != 0.0) {
          eq_trips.emplace_back(g.eq_offset + r, var, eq_buf[r].dot);
        }
      }
    }
  }
  eq_jac.resize(num_eq_, num_vars_);
  eq_jac.setFromTriplets(eq_trips.begin(), eq_trips.end());
  ineq_jac.resize(num_ineq_, num_vars_);
  ineq_jac.setFromTriplets(ineq_trips.begin(), ineq_trips.end());
}

double NlpProblem::smoothness(const VectorXd& z) const {
  if (options_.model != ModelKind::Full5) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double ts = 0.0;
  for (int k = 0; k < k_f_; ++k) {
    const double a = z(control_index(k));
    const double w = z(control_index(k) + 1);
    ts += a * a + w * w;
  }
  return ts;
}

VectorXd NlpProblem::pack(const Trajectory& traj) const {
  if (options_.model != ModelKind::Full5) {
    throw Error("NlpProblem::pack: reduced-model problem, use pack_simplified");
  }
  if (static_cast<int>(traj.controls.size()) != k_f_ ||
      traj.states.size() != traj.controls.size() + 1) {
    throw LengthMismatch("NlpProblem::pack: trajectory does not match the horizon");
  }
  VectorXd z = VectorXd::Zero(num_vars_);
  for (int k = 0; k <= k_f_; ++k) {
    const std::array<double, 5> s = traj.states[k].as_array();
    for (int i = 0; i < 5; ++i) z(state_index(k) + i) = s[i];
  }
  for (int k = 0; k < k_f_; ++k) {
    z(control_index(k)) = traj.controls[k].a;
    z(control_index(k) + 1) = traj.controls[k].omega;
  }
  z(tf_index()) = traj.t_f;
  if (options_.with_collision) {
    for (int k = 1; k <= k_f_; ++k) {
      const HalfSpacePolygon body = body_polygon(traj.states[k], scenario_.vehicle);
      for (size_t o = 0; o < scenario_.obstacles.size(); ++o) {
        const VectorXd aux =
            initial_aux_values(options_.formulation, body, scenario_.obstacles[o]);
        z.segment(aux_index(k, static_cast<int>(o)), aux.size()) = aux;
      }
    }
  }
  return z;
}

VectorXd NlpProblem::pack_simplified(const std::vector<std::array<double, 3>>& states,
                                     const std::vector<std::array<double, 2>>& controls,
                                     double t_f) const {
  if (options_.model != ModelKind::Simplified3) {
    throw Error("NlpProblem::pack_simplified: full-model problem, use pack");
  }
  if (static_cast<int>(controls.size()) != k_f_ || states.size() != controls.size() + 1) {
    throw LengthMismatch("NlpProblem::pack_simplified: trajectory does not match horizon");
  }
  VectorXd z = VectorXd::Zero(num_vars_);
  for (int k = 0; k <= k_f_; ++k) {
    for (int i = 0; i < 3; ++i) z(state_index(k) + i) = states[k][i];
  }
  for (int k = 0; k < k_f_; ++k) {
    z(control_index(k)) = controls[k][0];
    z(control_index(k) + 1) = controls[k][1];
  }
  z(tf_index()) = t_f;
  if (options_.with_collision) {
    for (int k = 1; k <= k_f_; ++k) {
      const HalfSpacePolygon body =
          body_polygon(states[k][0], states[k][1], states[k][2], scenario_.vehicle);
      for (size_t o = 0; o < scenario_.obstacles.size(); ++o) {
        const VectorXd aux =
            initial_aux_values(options_.formulation, body, scenario_.obstacles[o]);
        z.segment(aux_index(k, static_cast<int>(o)), aux.size()) = aux;
      }
    }
  }
  return z;
}

Trajectory NlpProblem::extract_trajectory(const VectorXd& z) const {
  check_length(z);
  if (options_.model != ModelKind::Full5) {
    throw Error("NlpProblem::extract_trajectory: reduced-model problem");
  }
  Trajectory traj;
  traj.t_f = z(tf_index());
  traj.states.resize(k_f_ + 1);
  traj.controls.resize(k_f_);
  for (int k = 0; k <= k_f_; ++k) {
    std::array<double, 5> s;
    for (int i = 0; i < 5; ++i) s[i] = z(state_index(k) + i);
    traj.states[k] = VehicleState::from_array(s);
  }
  for (int k = 0; k < k_f_; ++k) {
    traj.controls[k] = {z(control_index(k)), z(control_index(k) + 1)};
  }
  return traj;
}

NlpProblem assemble(const Scenario& scenario, FormulationKind kind, int k_f) {
  TranscriptionOptions options;
  options.model = ModelKind::Full5;
  options.with_collision = true;
  options.formulation = kind;
  return NlpProblem(scenario, k_f, options);
}

}  // namespace parkplan
