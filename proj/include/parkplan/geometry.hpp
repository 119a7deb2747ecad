#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "parkplan/errors.hpp"

namespace parkplan {

using Eigen::Matrix2d;
using Eigen::MatrixX2d;
using Eigen::Vector2d;
using Eigen::VectorXd;

/// Absolute containment tolerance, in meters.
inline constexpr double kContainTol = 1e-9;

/// Proper rigid motion of the plane, q -> R q + T.
struct RigidTransform {
  Matrix2d rotation = Matrix2d::Identity();
  Vector2d translation = Vector2d::Zero();

  static RigidTransform from_angle(double theta, const Vector2d& t = Vector2d::Zero());

  Vector2d apply(const Vector2d& q) const { return rotation * q + translation; }

  /// Throws if the rotation block is not orthogonal with determinant +1
  /// (checked to 1e-12).
  void validate() const;
};

enum class Orientation { Clockwise, CounterClockwise };

/// Bounded convex polygon stored as an ordered half-space system A q <= b,
/// one row per edge, with the vertex list cached at construction.
///
/// Rows are kept exactly as given (not unit-normalized); row i and row i+1
/// (cyclically) meet in vertex i. Values are immutable after construction and
/// safe to share across threads.
class HalfSpacePolygon {
 public:
  /// Builds the polygon from its half-space system and caches the vertices by
  /// solving each cyclic consecutive 2x2 system.
  ///
  /// Throws DegenerateEdges if consecutive rows are parallel, UnboundedPolygon
  /// if the normals do not positively span the plane, and EmptyPolygon if a
  /// cached vertex violates some other row by more than kContainTol (rows out
  /// of cyclic order, or an empty feasible set).
  static HalfSpacePolygon from_halfspaces(MatrixX2d normals, VectorXd offsets);

  const MatrixX2d& normals() const { return normals_; }
  const VectorXd& offsets() const { return offsets_; }
  const std::vector<Vector2d>& vertices() const { return vertices_; }
  int num_edges() const { return static_cast<int>(offsets_.size()); }
  Orientation orientation() const { return orientation_; }

  /// Closed containment: A q <= b componentwise, each row with tolerance
  /// kContainTol.
  bool contains_point(const Vector2d& q) const;

  /// Image under a rigid motion: vertices map to R v + T, rows to
  /// (A R^T) q <= b + A R^T T.
  HalfSpacePolygon transformed(const RigidTransform& xf) const;

  /// Rows rescaled to unit normals, for operations that need a metric margin.
  void normalized_halfspaces(MatrixX2d& normals, VectorXd& offsets) const;

 private:
  HalfSpacePolygon() = default;

  MatrixX2d normals_;
  VectorXd offsets_;
  std::vector<Vector2d> vertices_;
  Orientation orientation_ = Orientation::CounterClockwise;
};

/// Union of convex pieces; parts may overlap or be disjoint.
struct PolyUnion {
  std::vector<HalfSpacePolygon> parts;

  bool contains_point(const Vector2d& q) const;
};

/// Strictly separating axis, oriented so the first polygon lies above:
/// axis . v > offset for all vertices of P, axis . o < offset for all
/// vertices of Q.
struct SeparatingAxis {
  Vector2d axis;   // unit length
  double offset;   // hyperplane offset (mu)
  double gap;      // clearance between the two projection intervals
};

struct SatResult {
  bool disjoint = false;
  std::optional<SeparatingAxis> axis;
};

/// Separating-axis test over the edge normals of both polygons. Closed-set
/// semantics: touching polygons (zero gap) report NOT disjoint. When disjoint,
/// the axis with the widest gap is returned.
SatResult sat_disjoint(const HalfSpacePolygon& p, const HalfSpacePolygon& q);

/// Recovers the normalized half-space system of a convex polygon from its
/// cyclically ordered vertex list (outward edge normals, unit length).
void halfspaces_from_vertices(const std::vector<Vector2d>& vertices,
                              Orientation orientation, MatrixX2d& normals,
                              VectorXd& offsets);

}  // namespace parkplan
