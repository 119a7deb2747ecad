#include "parkplan/vehicle.hpp"

namespace parkplan {

void VehicleParams::validate() const {
  if (wheelbase <= 0.0 || body_length <= 0.0 || body_width <= 0.0 || rear_overhang <= 0.0) {
    throw Error("VehicleParams: all dimensions must be positive");
  }
  if (rear_overhang >= body_length) {
    throw Error("VehicleParams: rear_overhang must be smaller than body_length");
  }
}

VehicleState rk4_step(const VehicleState& xi, const VehicleControl& u, double h,
                      const VehicleParams& params) {
  const std::array<double, 5> out =
      rk4_step<double>(xi.as_array(), {u.a, u.omega}, h, params);
  return VehicleState::from_array(out);
}

HalfSpacePolygon body_frame_polygon(const VehicleParams& params) {
  MatrixX2d normals(4, 2);
  normals << 1, 0, 0, 1, -1, 0, 0, -1;
  VectorXd offsets(4);
  offsets << params.body_length - params.rear_overhang, 0.5 * params.body_width,
      params.rear_overhang, 0.5 * params.body_width;
  return HalfSpacePolygon::from_halfspaces(normals, offsets);
}

HalfSpacePolygon body_polygon(double x, double y, double theta, const VehicleParams& params) {
  return body_frame_polygon(params).transformed(
      RigidTransform::from_angle(theta, Vector2d(x, y)));
}

HalfSpacePolygon body_polygon(const VehicleState& xi, const VehicleParams& params) {
  return body_polygon(xi.x, xi.y, xi.theta, params);
}

}  // namespace parkplan
