#include "parkplan/trajectory.hpp"

namespace parkplan {

bool pose_collision_free(const VehicleState& state, const Scenario& scenario) {
  const HalfSpacePolygon body = body_polygon(state, scenario.vehicle);
  for (const Vector2d& corner : body.vertices()) {
    if (!scenario.environment.contains_point(corner)) return false;
  }
  for (const HalfSpacePolygon& obs : scenario.obstacles) {
    if (!sat_disjoint(body, obs).disjoint) return false;
  }
  return true;
}

bool samples_collision_free(const Trajectory& traj, const Scenario& scenario) {
  for (const VehicleState& s : traj.states) {
    if (!pose_collision_free(s, scenario)) return false;
  }
  return true;
}

bool continuous_collision_check(const Trajectory& traj, const Scenario& scenario,
                                int refine) {
  if (refine < 1) throw Error("continuous_collision_check: refine must be >= 1");
  if (traj.states.size() != traj.controls.size() + 1) {
    throw LengthMismatch("continuous_collision_check: states/controls size mismatch");
  }
  const int kf = traj.k_f();
  const double h = traj.t_f / kf / refine;
  for (int k = 0; k < kf; ++k) {
    if (!pose_collision_free(traj.states[k], scenario)) return false;
    // Intermediate poses come from re-integrating the interval, not from the
    // stored samples, so defects in the input do not mask violations.
    VehicleState xi = traj.states[k];
    for (int j = 1; j < refine; ++j) {
      xi = rk4_step(xi, traj.controls[k], h, scenario.vehicle);
      if (!pose_collision_free(xi, scenario)) return false;
    }
  }
  return pose_collision_free(traj.states.back(), scenario);
}

double trajectory_smoothness(const Trajectory& traj) {
  double ts = 0.0;
  for (const VehicleControl& u : traj.controls) {
    ts += u.a * u.a + u.omega * u.omega;
  }
  return ts;
}

double trajectory_objective(const Trajectory& traj, const CostWeights& weights) {
  const int kf = traj.k_f();
  double energy = 0.0;
  for (const VehicleControl& u : traj.controls) {
    energy += weights.p_diag.x() * u.a * u.a + weights.p_diag.y() * u.omega * u.omega;
  }
  return traj.t_f * (weights.r + energy / kf);
}

}  // namespace parkplan
