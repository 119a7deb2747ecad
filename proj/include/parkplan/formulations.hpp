#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "parkplan/dual.hpp"
#include "parkplan/geometry.hpp"

namespace parkplan {

/// The six collision-constraint constructions benchmarked by this toolkit.
/// Eq14/Eq16/Eq17 are the vertex-certificate and hyperplane-separation forms;
/// Eq18/Eq19/Eq21 are the dual-multiplier baselines.
enum class FormulationKind { Eq14, Eq16, Eq17, Eq18, Eq19, Eq21 };

const char* to_string(FormulationKind kind);
std::optional<FormulationKind> formulation_from_string(const std::string& name);
inline constexpr std::array<FormulationKind, 6> kAllFormulations = {
    FormulationKind::Eq14, FormulationKind::Eq16, FormulationKind::Eq17,
    FormulationKind::Eq18, FormulationKind::Eq19, FormulationKind::Eq21};

/// Margins realizing the strict inequalities in smooth NLP form.
struct FormulationMargins {
  double eps_sep = 1e-4;  // separation margin, units of the row data
  double eps_gap = 1e-3;  // hyperplane gap width (m)
  double d_safe = 1e-3;   // safety distance for the dual forms (m)
};

/// Number of auxiliary certificate variables per (vehicle piece, obstacle
/// piece) pair at one sample.
int aux_count(FormulationKind kind, int n_v, int n_o);

/// Per-pair auxiliary block: bounds plus a human-readable name per entry.
struct AuxLayout {
  int per_pair_count = 0;
  VectorXd lower_bounds;
  VectorXd upper_bounds;
  std::vector<std::string> structure;
};

AuxLayout aux_layout(FormulationKind kind, int n_v, int n_o);

struct BlockShape {
  int num_ineq = 0;
  int num_eq = 0;
};

/// Residual counts of one collision block (excluding variable bounds).
BlockShape block_shape(FormulationKind kind, int n_v, int n_o);

/// Vertex certificate for a single point: q is strictly outside P iff some
/// nonnegative combination lambda of the row residuals A q - b is positive.
/// Returns the constructive witness (scaled unit vector on the most-violated
/// row) with (A q - b) . lambda >= eps_sep, or nullopt for q inside or on the
/// boundary.
std::optional<VectorXd> point_certificate(const Vector2d& q, const HalfSpacePolygon& p,
                                          double eps_sep = 1e-4);

/// Vehicle body placed at a pose, with everything the residual kernels read:
/// world-frame vertices, world-frame half-space rows, and the pose itself.
/// `frame` must outlive this view.
template <typename T>
struct PosedBody {
  const HalfSpacePolygon* frame = nullptr;
  std::vector<std::array<T, 2>> vertices;      // V columns
  std::vector<std::array<T, 2>> edge_normals;  // rows of posed C
  std::vector<T> edge_offsets;                 // posed d
  std::array<std::array<T, 2>, 2> rotation{};  // R
  std::array<T, 2> translation{};              // T

  int num_edges() const { return static_cast<int>(edge_offsets.size()); }
};

template <typename T>
PosedBody<T> pose_body(const HalfSpacePolygon& body_frame, T x, T y, T theta) {
  using std::cos;
  using std::sin;
  PosedBody<T> out;
  out.frame = &body_frame;
  const T c = cos(theta);
  const T s = sin(theta);
  out.rotation = {{{c, -s}, {s, c}}};
  out.translation = {x, y};
  const int n = body_frame.num_edges();
  out.vertices.resize(n);
  out.edge_normals.resize(n);
  out.edge_offsets.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vector2d v0 = body_frame.vertices()[i];
    out.vertices[i] = {x + c * v0.x() - s * v0.y(), y + s * v0.x() + c * v0.y()};
    const double nx = body_frame.normals()(i, 0);
    const double ny = body_frame.normals()(i, 1);
    out.edge_normals[i] = {c * nx - s * ny, s * nx + c * ny};
    out.edge_offsets[i] = T(body_frame.offsets()(i)) + out.edge_normals[i][0] * x +
                          out.edge_normals[i][1] * y;
  }
  return out;
}

/// Evaluates one collision block. `aux` has aux_count entries; `ineq` and `eq`
/// have block_shape entries. Inequality convention: feasible means >= 0.
template <typename T>
void eval_collision(FormulationKind kind, const PosedBody<T>& body,
                    const HalfSpacePolygon& obs, const FormulationMargins& m,
                    const T* aux, T* ineq, T* eq) {
  const int nv = body.num_edges();
  const int no = obs.num_edges();
  const auto& a = obs.normals();
  const auto& b = obs.offsets();

  switch (kind) {
    case FormulationKind::Eq14: {
      // aux: Lambda (nv x no, column-major) then Omega (no x nv, column-major).
      const T* lam = aux;
      const T* om = aux + nv * no;
      for (int j = 0; j < no; ++j) {
        const Vector2d& oj = obs.vertices()[j];
        for (int l = 0; l < no; ++l) {
          T r = T(-m.eps_sep);
          for (int i = 0; i < nv; ++i) {
            const T coeff = body.edge_normals[i][0] * oj.x() +
                            body.edge_normals[i][1] * oj.y() - body.edge_offsets[i];
            r += coeff * lam[l * nv + i];
          }
          ineq[j * no + l] = r;
        }
      }
      T* ineq2 = ineq + no * no;
      for (int i = 0; i < nv; ++i) {
        for (int l = 0; l < nv; ++l) {
          T r = T(-m.eps_sep);
          for (int j = 0; j < no; ++j) {
            const T coeff =
                a(j, 0) * body.vertices[i][0] + a(j, 1) * body.vertices[i][1] - b(j);
            r += coeff * om[l * no + j];
          }
          ineq2[i * nv + l] = r;
        }
      }
      for (int l = 0; l < no; ++l) {
        T s = T(-1.0);
        for (int i = 0; i < nv; ++i) s += lam[l * nv + i];
        eq[l] = s;
      }
      for (int l = 0; l < nv; ++l) {
        T s = T(-1.0);
        for (int j = 0; j < no; ++j) s += om[l * no + j];
        eq[no + l] = s;
      }
      break;
    }
    case FormulationKind::Eq16: {
      const T lx = aux[0], ly = aux[1], mu1 = aux[2], mu2 = aux[3];
      for (int i = 0; i < nv; ++i) {
        ineq[i] = lx * body.vertices[i][0] + ly * body.vertices[i][1] - mu1 - T(m.eps_sep);
      }
      for (int j = 0; j < no; ++j) {
        const Vector2d& oj = obs.vertices()[j];
        ineq[nv + j] = mu2 - (lx * oj.x() + ly * oj.y()) - T(m.eps_sep);
      }
      ineq[nv + no] = mu1 - mu2 - T(m.eps_gap);
      eq[0] = lx * lx + ly * ly - T(1.0);
      break;
    }
    case FormulationKind::Eq17: {
      const T lx = aux[0], ly = aux[1], mu = aux[2];
      for (int i = 0; i < nv; ++i) {
        ineq[i] = lx * body.vertices[i][0] + ly * body.vertices[i][1] - mu - T(m.eps_sep);
      }
      for (int j = 0; j < no; ++j) {
        const Vector2d& oj = obs.vertices()[j];
        ineq[nv + j] = mu - (lx * oj.x() + ly * oj.y()) - T(m.eps_sep);
      }
      eq[0] = lx * lx + ly * ly - T(1.0);
      break;
    }
    case FormulationKind::Eq18:
    case FormulationKind::Eq19: {
      // aux: lambda (no) then mu (nv), both >= 0 via bounds.
      const T* lam = aux;
      const T* mu = aux + no;
      T margin = T(-m.d_safe);
      for (int j = 0; j < no; ++j) margin -= b(j) * lam[j];
      for (int i = 0; i < nv; ++i) margin -= body.edge_offsets[i] * mu[i];
      ineq[0] = margin;
      T ux = T(0.0), uy = T(0.0);
      for (int j = 0; j < no; ++j) {
        ux += a(j, 0) * lam[j];
        uy += a(j, 1) * lam[j];
      }
      if (kind == FormulationKind::Eq19) {
        ineq[1] = T(1.0) - (ux * ux + uy * uy);
      }
      eq[0] = ux;
      eq[1] = uy;
      for (int i = 0; i < nv; ++i) {
        eq[0] += body.edge_normals[i][0] * mu[i];
        eq[1] += body.edge_normals[i][1] * mu[i];
      }
      break;
    }
    case FormulationKind::Eq21: {
      const T* lam = aux;
      const T* mu = aux + no;
      const auto& c0 = body.frame->normals();
      const auto& d0 = body.frame->offsets();
      T margin = T(-m.d_safe);
      for (int i = 0; i < nv; ++i) margin -= d0(i) * mu[i];
      for (int j = 0; j < no; ++j) {
        margin += (a(j, 0) * body.translation[0] + a(j, 1) * body.translation[1] - b(j)) *
                  lam[j];
      }
      ineq[0] = margin;
      T ux = T(0.0), uy = T(0.0);
      for (int j = 0; j < no; ++j) {
        ux += a(j, 0) * lam[j];
        uy += a(j, 1) * lam[j];
      }
      ineq[1] = T(1.0) - (ux * ux + uy * uy);
      // C0^T mu + R^T (A^T lambda) = 0
      eq[0] = body.rotation[0][0] * ux + body.rotation[1][0] * uy;
      eq[1] = body.rotation[0][1] * ux + body.rotation[1][1] * uy;
      for (int i = 0; i < nv; ++i) {
        eq[0] += c0(i, 0) * mu[i];
        eq[1] += c0(i, 1) * mu[i];
      }
      break;
    }
  }
}

/// Environment containment rows f_r - e_r . v_i >= 0, row-major over
/// (environment row, body vertex).
template <typename T>
void eval_containment(const PosedBody<T>& body, const HalfSpacePolygon& env, T* out) {
  const int nv = static_cast<int>(body.vertices.size());
  const auto& e = env.normals();
  const auto& f = env.offsets();
  for (int r = 0; r < env.num_edges(); ++r) {
    for (int i = 0; i < nv; ++i) {
      out[r * nv + i] =
          T(f(r)) - (e(r, 0) * body.vertices[i][0] + e(r, 1) * body.vertices[i][1]);
    }
  }
}

/// One collision (or containment) block at fixed geometry, for inspection and
/// direct evaluation in tests and oracles. Immutable and shareable.
class ConstraintBlock {
 public:
  enum class Type { Collision, Containment };

  Type type() const { return type_; }
  FormulationKind kind() const { return kind_; }
  int num_ineq() const { return shape_.num_ineq; }
  int num_eq() const { return shape_.num_eq; }
  int aux_size() const { return layout_.per_pair_count; }
  const AuxLayout& layout() const { return layout_; }
  const FormulationMargins& margins() const { return margins_; }

  /// Evaluates every residual at the given auxiliary values. Throws
  /// ShapeMismatch if aux length disagrees with the layout.
  void eval(const VectorXd& aux, VectorXd& ineq, VectorXd& eq) const;

 private:
  friend ConstraintBlock build_collision_block(FormulationKind, const HalfSpacePolygon&,
                                               const RigidTransform&,
                                               const HalfSpacePolygon&,
                                               const FormulationMargins&);
  friend ConstraintBlock build_containment(const HalfSpacePolygon&,
                                           const HalfSpacePolygon&);
  ConstraintBlock() = default;

  Type type_ = Type::Collision;
  FormulationKind kind_ = FormulationKind::Eq17;
  HalfSpacePolygon body_frame_;
  RigidTransform pose_;
  HalfSpacePolygon other_;  // obstacle, or environment for containment
  FormulationMargins margins_;
  BlockShape shape_;
  AuxLayout layout_;
};

/// Generic builder: body given by its frame polygon and pose, so Eq21 sees the
/// (R, T) parameterization while the other kinds read the posed data.
ConstraintBlock build_collision_block(FormulationKind kind,
                                      const HalfSpacePolygon& body_frame,
                                      const RigidTransform& pose,
                                      const HalfSpacePolygon& obstacle,
                                      const FormulationMargins& margins = {});

/// Named builders mirroring each formulation; `body` is the already-posed
/// polygon (its vertices are V, its rows are (C, d)).
ConstraintBlock build_eq14(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins = {});
ConstraintBlock build_eq16(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins = {});
ConstraintBlock build_eq17(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins = {});
ConstraintBlock build_eq18(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins = {});
ConstraintBlock build_eq19(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins = {});
ConstraintBlock build_eq21(const HalfSpacePolygon& body_frame, const RigidTransform& pose,
                           const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins = {});
ConstraintBlock build_containment(const HalfSpacePolygon& body,
                                  const HalfSpacePolygon& environment);

/// Geometry-informed warm start for the auxiliary block of one
/// (body, obstacle) pair: hyperplane kinds take the widest separating axis,
/// Eq14 columns start uniform, the dual kinds start at a small constant.
VectorXd initial_aux_values(FormulationKind kind, const HalfSpacePolygon& body,
                            const HalfSpacePolygon& obstacle);

}  // namespace parkplan
