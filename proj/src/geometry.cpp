#include "parkplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parkplan {

RigidTransform RigidTransform::from_angle(double theta, const Vector2d& t) {
  RigidTransform xf;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  xf.rotation << c, -s, s, c;
  xf.translation = t;
  return xf;
}

void RigidTransform::validate() const {
  const Matrix2d err = rotation.transpose() * rotation - Matrix2d::Identity();
  if (err.cwiseAbs().maxCoeff() > 1e-12 || rotation.determinant() < 0.0) {
    throw Error("RigidTransform: rotation block is not a proper rotation");
  }
}

namespace {

Orientation detect_orientation(const std::vector<Vector2d>& v) {
  // Signed area of the vertex cycle.
  double twice_area = 0.0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    const Vector2d& a = v[i];
    const Vector2d& b = v[(i + 1) % n];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  return twice_area >= 0.0 ? Orientation::CounterClockwise : Orientation::Clockwise;
}

}  // namespace

HalfSpacePolygon HalfSpacePolygon::from_halfspaces(MatrixX2d normals, VectorXd offsets) {
  const int n = static_cast<int>(offsets.size());
  if (normals.rows() != n) {
    throw ShapeMismatch("HalfSpacePolygon: normals/offsets row mismatch");
  }
  if (n < 3) {
    throw DegenerateEdges("HalfSpacePolygon: a bounded polygon needs at least 3 edges");
  }
  for (int i = 0; i < n; ++i) {
    if (normals.row(i).norm() < 1e-14) {
      throw DegenerateEdges("HalfSpacePolygon: zero normal row");
    }
  }

  // Boundedness: the outward normals must positively span the plane, i.e. no
  // angular gap of pi or more between consecutive normal directions.
  {
    std::vector<double> angles(n);
    for (int i = 0; i < n; ++i) {
      angles[i] = std::atan2(normals(i, 1), normals(i, 0));
    }
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 2.0 * M_PI - angles.back();
    for (int i = 1; i < n; ++i) {
      max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
    }
    if (max_gap >= M_PI - 1e-12) {
      throw UnboundedPolygon("HalfSpacePolygon: feasible set is unbounded");
    }
  }

  HalfSpacePolygon poly;
  poly.vertices_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    Matrix2d m;
    m.row(0) = normals.row(i);
    m.row(1) = normals.row(j);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double scale = normals.row(i).norm() * normals.row(j).norm();
    if (std::abs(det) <= 1e-12 * scale) {
      throw DegenerateEdges("HalfSpacePolygon: consecutive rows are parallel");
    }
    poly.vertices_[i] = m.partialPivLu().solve(Vector2d(offsets(i), offsets(j)));
  }
  for (int i = 0; i < n; ++i) {
    const VectorXd slack = offsets - normals * poly.vertices_[i];
    if (slack.minCoeff() < -kContainTol) {
      throw EmptyPolygon(
          "HalfSpacePolygon: vertex violates another row (rows out of cyclic "
          "order, or empty feasible set)");
    }
  }

  poly.normals_ = std::move(normals);
  poly.offsets_ = std::move(offsets);
  poly.orientation_ = detect_orientation(poly.vertices_);
  return poly;
}

bool HalfSpacePolygon::contains_point(const Vector2d& q) const {
  return ((normals_ * q - offsets_).array() <= kContainTol).all();
}

HalfSpacePolygon HalfSpacePolygon::transformed(const RigidTransform& xf) const {
  HalfSpacePolygon out;
  out.normals_ = normals_ * xf.rotation.transpose();
  out.offsets_ = offsets_ + out.normals_ * xf.translation;
  out.vertices_.reserve(vertices_.size());
  for (const Vector2d& v : vertices_) {
    out.vertices_.push_back(xf.apply(v));
  }
  out.orientation_ = orientation_;
  return out;
}

void HalfSpacePolygon::normalized_halfspaces(MatrixX2d& normals, VectorXd& offsets) const {
  normals = normals_;
  offsets = offsets_;
  for (int i = 0; i < normals.rows(); ++i) {
    const double s = 1.0 / normals.row(i).norm();
    normals.row(i) *= s;
    offsets(i) *= s;
  }
}

bool PolyUnion::contains_point(const Vector2d& q) const {
  return std::any_of(parts.begin(), parts.end(),
                     [&](const HalfSpacePolygon& p) { return p.contains_point(q); });
}

namespace {

void project(const HalfSpacePolygon& poly, const Vector2d& axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Vector2d& v : poly.vertices()) {
    const double d = axis.dot(v);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

}  // namespace

SatResult sat_disjoint(const HalfSpacePolygon& p, const HalfSpacePolygon& q) {
  SatResult result;
  double best_gap = 0.0;

  auto consider = [&](Vector2d axis) {
    const double len = axis.norm();
    if (len < 1e-14) return;
    axis /= len;
    double p_lo, p_hi, q_lo, q_hi;
    project(p, axis, p_lo, p_hi);
    project(q, axis, q_lo, q_hi);
    // Orient so p sits above the hyperplane.
    if (p_lo - q_hi > best_gap) {
      best_gap = p_lo - q_hi;
      result.axis = SeparatingAxis{axis, 0.5 * (p_lo + q_hi), best_gap};
    }
    if (q_lo - p_hi > best_gap) {
      best_gap = q_lo - p_hi;
      result.axis = SeparatingAxis{-axis, -0.5 * (q_lo + p_hi), best_gap};
    }
  };

  for (int i = 0; i < p.num_edges(); ++i) consider(p.normals().row(i).transpose());
  for (int i = 0; i < q.num_edges(); ++i) consider(q.normals().row(i).transpose());

  result.disjoint = best_gap > 0.0;
  if (!result.disjoint) result.axis.reset();
  return result;
}

void halfspaces_from_vertices(const std::vector<Vector2d>& vertices,
                              Orientation orientation, MatrixX2d& normals,
                              VectorXd& offsets) {
  const int n = static_cast<int>(vertices.size());
  normals.resize(n, 2);
  offsets.resize(n);
  // Vertex i lies on edges i and i+1, so edge i runs from vertex i-1 to i.
  for (int i = 0; i < n; ++i) {
    const Vector2d& a = vertices[(i + n - 1) % n];
    const Vector2d& b = vertices[i];
    Vector2d e = b - a;
    Vector2d outward = orientation == Orientation::CounterClockwise
                           ? Vector2d(e.y(), -e.x())
                           : Vector2d(-e.y(), e.x());
    outward.normalize();
    normals.row(i) = outward.transpose();
    offsets(i) = outward.dot(b);
  }
}

}  // namespace parkplan
