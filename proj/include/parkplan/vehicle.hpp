#pragma once

#include <array>

#include "parkplan/dual.hpp"
#include "parkplan/geometry.hpp"

namespace parkplan {

/// Rear-axle state of the kinematic vehicle: position (m), yaw (rad),
/// velocity (m/s), steering angle (rad).
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double delta = 0.0;

  std::array<double, 5> as_array() const { return {x, y, theta, v, delta}; }
  static VehicleState from_array(const std::array<double, 5>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
};

/// Acceleration (m/s^2) and steering rate (rad/s).
struct VehicleControl {
  double a = 0.0;
  double omega = 0.0;
};

/// Body geometry: wheelbase plus the rectangle hull, positioned by the
/// rear-axle midpoint. rear_overhang is the rear-axle-to-rear-bumper distance,
/// so in the body frame the rectangle spans
/// [-rear_overhang, body_length - rear_overhang] x [-width/2, width/2].
struct VehicleParams {
  double wheelbase = 2.796;
  double body_length = 4.628;
  double body_width = 2.097;
  double rear_overhang = 0.916;

  void validate() const;
};

/// Kinematic bicycle model: returns (x', y', theta', v', delta').
template <typename T>
std::array<T, 5> dynamics(const std::array<T, 5>& xi, const std::array<T, 2>& u,
                          const VehicleParams& params) {
  const T v = xi[3];
  const T delta = xi[4];
  using std::cos;
  using std::sin;
  using std::tan;
  return {v * cos(xi[2]), v * sin(xi[2]), v * tan(delta) / T(params.wheelbase), u[0], u[1]};
}

/// Reduced model over (x, y, theta) with (v, delta) as direct controls.
template <typename T>
std::array<T, 3> simplified_dynamics(const std::array<T, 3>& xi, const std::array<T, 2>& u,
                                     const VehicleParams& params) {
  const T v = u[0];
  const T delta = u[1];
  using std::cos;
  using std::sin;
  using std::tan;
  return {v * cos(xi[2]), v * sin(xi[2]), v * tan(delta) / T(params.wheelbase)};
}

/// One classical fourth-order Runge-Kutta step with the control held constant.
template <typename T, std::size_t N, typename Deriv>
std::array<T, N> rk4_step_generic(const std::array<T, N>& xi, T h, Deriv deriv) {
  std::array<T, N> k1 = deriv(xi);
  std::array<T, N> mid;
  for (std::size_t i = 0; i < N; ++i) mid[i] = xi[i] + T(0.5) * h * k1[i];
  std::array<T, N> k2 = deriv(mid);
  for (std::size_t i = 0; i < N; ++i) mid[i] = xi[i] + T(0.5) * h * k2[i];
  std::array<T, N> k3 = deriv(mid);
  for (std::size_t i = 0; i < N; ++i) mid[i] = xi[i] + h * k3[i];
  std::array<T, N> k4 = deriv(mid);
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = xi[i] + h / T(6.0) * (k1[i] + T(2.0) * k2[i] + T(2.0) * k3[i] + k4[i]);
  }
  return out;
}

template <typename T>
std::array<T, 5> rk4_step(const std::array<T, 5>& xi, const std::array<T, 2>& u, T h,
                          const VehicleParams& params) {
  return rk4_step_generic<T, 5>(
      xi, h, [&](const std::array<T, 5>& s) { return dynamics(s, u, params); });
}

template <typename T>
std::array<T, 3> rk4_step_simplified(const std::array<T, 3>& xi, const std::array<T, 2>& u,
                                     T h, const VehicleParams& params) {
  return rk4_step_generic<T, 3>(
      xi, h, [&](const std::array<T, 3>& s) { return simplified_dynamics(s, u, params); });
}

VehicleState rk4_step(const VehicleState& xi, const VehicleControl& u, double h,
                      const VehicleParams& params);

/// Body-frame rectangle in half-space form; the transformed copy at a given
/// pose is the polygon all collision machinery works with.
HalfSpacePolygon body_frame_polygon(const VehicleParams& params);

/// Body polygon at pose (x, y, theta).
HalfSpacePolygon body_polygon(const VehicleState& xi, const VehicleParams& params);
HalfSpacePolygon body_polygon(double x, double y, double theta, const VehicleParams& params);

}  // namespace parkplan
