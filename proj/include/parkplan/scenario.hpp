#pragma once

#include <array>
#include <string>
#include <vector>

#include "parkplan/geometry.hpp"
#include "parkplan/vehicle.hpp"

namespace parkplan {

/// Box bounds on the five states (x, y, theta, v, delta) and two controls
/// (a, omega), SI units and radians.
struct Bounds {
  std::array<double, 5> state_lower{};
  std::array<double, 5> state_upper{};
  std::array<double, 2> control_lower{};
  std::array<double, 2> control_upper{};
};

/// Time-energy cost weights: J = t_f (r + sum u' diag(p) u dtau).
struct CostWeights {
  double r = 0.01;
  Vector2d p_diag = Vector2d(1.0, 2.0);

  void validate() const;
};

/// A parking problem instance: environment polygon, convex obstacles, vehicle
/// geometry, boundary states, bounds, and cost weights.
struct Scenario {
  std::string name;
  HalfSpacePolygon environment;
  std::vector<HalfSpacePolygon> obstacles;
  VehicleParams vehicle;
  VehicleState init_state;
  VehicleState final_state;
  Bounds bounds;
  CostWeights weights;

  /// Checks the boundary states against the bounds, containment of both
  /// boundary body polygons in the environment, and that every obstacle
  /// overlaps the environment. Throws Error on violation.
  void validate() const;
};

/// The three built-in benchmark scenarios, by name: "vertical", "parallel",
/// "oblique".
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Scenario JSON: polygon blocks {"A": [[..],..], "b": [..]} with significant
/// row order; angles in degrees (converted to radians on load).
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);
std::string scenario_to_json(const Scenario& scenario);

/// Resolves a CLI argument: a built-in name, otherwise a file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace parkplan
