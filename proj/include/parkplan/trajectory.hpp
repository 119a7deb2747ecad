#pragma once

#include <vector>

#include "parkplan/scenario.hpp"
#include "parkplan/vehicle.hpp"

namespace parkplan {

/// Sampled trajectory: k_f + 1 states, k_f piecewise-constant controls, and
/// the horizon length. Interval k covers tau in [k, k+1] / k_f.
struct Trajectory {
  std::vector<VehicleState> states;
  std::vector<VehicleControl> controls;
  double t_f = 0.0;

  int k_f() const { return static_cast<int>(controls.size()); }
};

/// Per-pose geometric check: body polygon strictly disjoint from every
/// obstacle and all body corners inside the environment.
bool pose_collision_free(const VehicleState& state, const Scenario& scenario);

/// Per-sample check over all stored states.
bool samples_collision_free(const Trajectory& traj, const Scenario& scenario);

/// Re-integrates each shooting interval at `refine`-times finer sampling and
/// applies the geometric check at every fine sample. refine = 1 reduces to the
/// per-sample check. Catches trajectories that tunnel through thin obstacles
/// between samples.
bool continuous_collision_check(const Trajectory& traj, const Scenario& scenario,
                                int refine);

/// Trajectory smoothness sum over intervals of a^2 + omega^2.
double trajectory_smoothness(const Trajectory& traj);

/// Time-energy objective recomputed from scratch.
double trajectory_objective(const Trajectory& traj, const CostWeights& weights);

}  // namespace parkplan
