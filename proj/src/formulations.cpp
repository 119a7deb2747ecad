#include "parkplan/formulations.hpp"

#include <cmath>

namespace parkplan {

const char* to_string(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::Eq14: return "eq14";
    case FormulationKind::Eq16: return "eq16";
    case FormulationKind::Eq17: return "eq17";
    case FormulationKind::Eq18: return "eq18";
    case FormulationKind::Eq19: return "eq19";
    case FormulationKind::Eq21: return "eq21";
  }
  return "?";
}

std::optional<FormulationKind> formulation_from_string(const std::string& name) {
  for (FormulationKind kind : kAllFormulations) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

int aux_count(FormulationKind kind, int n_v, int n_o) {
  switch (kind) {
    case FormulationKind::Eq14: return 2 * n_v * n_o;
    case FormulationKind::Eq16: return 4;
    case FormulationKind::Eq17: return 3;
    case FormulationKind::Eq18:
    case FormulationKind::Eq19:
    case FormulationKind::Eq21: return n_v + n_o;
  }
  return 0;
}

AuxLayout aux_layout(FormulationKind kind, int n_v, int n_o) {
  AuxLayout layout;
  layout.per_pair_count = aux_count(kind, n_v, n_o);
  layout.lower_bounds.resize(layout.per_pair_count);
  layout.upper_bounds.resize(layout.per_pair_count);
  layout.structure.reserve(layout.per_pair_count);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  switch (kind) {
    case FormulationKind::Eq14: {
      // Columns on the unit simplex.
      layout.lower_bounds.setZero();
      layout.upper_bounds.setOnes();
      for (int l = 0; l < n_o; ++l) {
        for (int i = 0; i < n_v; ++i) {
          layout.structure.push_back("Lambda[" + std::to_string(i) + "," +
                                     std::to_string(l) + "]");
        }
      }
      for (int l = 0; l < n_v; ++l) {
        for (int j = 0; j < n_o; ++j) {
          layout.structure.push_back("Omega[" + std::to_string(j) + "," +
                                     std::to_string(l) + "]");
        }
      }
      break;
    }
    case FormulationKind::Eq16:
      // lambda lives on the unit circle; the box only keeps iterates sane.
      layout.lower_bounds << -1.5, -1.5, -1e3, -1e3;
      layout.upper_bounds << 1.5, 1.5, 1e3, 1e3;
      layout.structure = {"lambda_x", "lambda_y", "mu1", "mu2"};
      break;
    case FormulationKind::Eq17:
      layout.lower_bounds << -1.5, -1.5, -1e3;
      layout.upper_bounds << 1.5, 1.5, 1e3;
      layout.structure = {"lambda_x", "lambda_y", "mu"};
      break;
    case FormulationKind::Eq18:
    case FormulationKind::Eq19:
    case FormulationKind::Eq21:
      layout.lower_bounds.setZero();
      layout.upper_bounds.setConstant(kInf);
      for (int j = 0; j < n_o; ++j) layout.structure.push_back("lambda[" + std::to_string(j) + "]");
      for (int i = 0; i < n_v; ++i) layout.structure.push_back("mu[" + std::to_string(i) + "]");
      break;
  }
  return layout;
}

BlockShape block_shape(FormulationKind kind, int n_v, int n_o) {
  switch (kind) {
    case FormulationKind::Eq14: return {n_o * n_o + n_v * n_v, n_o + n_v};
    case FormulationKind::Eq16: return {n_v + n_o + 1, 1};
    case FormulationKind::Eq17: return {n_v + n_o, 1};
    case FormulationKind::Eq18: return {1, 2};
    case FormulationKind::Eq19: return {2, 2};
    case FormulationKind::Eq21: return {2, 2};
  }
  return {};
}

std::optional<VectorXd> point_certificate(const Vector2d& q, const HalfSpacePolygon& p,
                                          double eps_sep) {
  const VectorXd violation = p.normals() * q - p.offsets();
  int worst = 0;
  const double max_violation = violation.maxCoeff(&worst);
  if (max_violation <= kContainTol) {
    return std::nullopt;  // inside or on the boundary
  }
  VectorXd lambda = VectorXd::Zero(p.num_edges());
  lambda(worst) = std::max(1.0, eps_sep / max_violation);
  return lambda;
}

void ConstraintBlock::eval(const VectorXd& aux, VectorXd& ineq, VectorXd& eq) const {
  if (type_ == Type::Containment) {
    if (aux.size() != 0) {
      throw ShapeMismatch("ConstraintBlock: containment takes no auxiliaries");
    }
    ineq.resize(shape_.num_ineq);
    eq.resize(0);
    const PosedBody<double> body =
        pose_body<double>(body_frame_, pose_.translation.x(), pose_.translation.y(),
                          std::atan2(pose_.rotation(1, 0), pose_.rotation(0, 0)));
    eval_containment(body, other_, ineq.data());
    return;
  }
  if (aux.size() != layout_.per_pair_count) {
    throw ShapeMismatch("ConstraintBlock: auxiliary vector has length " +
                        std::to_string(aux.size()) + ", expected " +
                        std::to_string(layout_.per_pair_count));
  }
  ineq.resize(shape_.num_ineq);
  eq.resize(shape_.num_eq);
  const double theta = std::atan2(pose_.rotation(1, 0), pose_.rotation(0, 0));
  const PosedBody<double> body =
      pose_body<double>(body_frame_, pose_.translation.x(), pose_.translation.y(), theta);
  eval_collision(kind_, body, other_, margins_, aux.data(), ineq.data(), eq.data());
}

ConstraintBlock build_collision_block(FormulationKind kind,
                                      const HalfSpacePolygon& body_frame,
                                      const RigidTransform& pose,
                                      const HalfSpacePolygon& obstacle,
                                      const FormulationMargins& margins) {
  ConstraintBlock block;
  block.type_ = ConstraintBlock::Type::Collision;
  block.kind_ = kind;
  block.body_frame_ = body_frame;
  block.pose_ = pose;
  block.other_ = obstacle;
  block.margins_ = margins;
  block.shape_ = block_shape(kind, body_frame.num_edges(), obstacle.num_edges());
  block.layout_ = aux_layout(kind, body_frame.num_edges(), obstacle.num_edges());
  return block;
}

namespace {
ConstraintBlock build_posed(FormulationKind kind, const HalfSpacePolygon& body,
                            const HalfSpacePolygon& obstacle,
                            const FormulationMargins& margins) {
  return build_collision_block(kind, body, RigidTransform{}, obstacle, margins);
}
}  // namespace

ConstraintBlock build_eq14(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins) {
  return build_posed(FormulationKind::Eq14, body, obstacle, margins);
}
ConstraintBlock build_eq16(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins) {
  return build_posed(FormulationKind::Eq16, body, obstacle, margins);
}
ConstraintBlock build_eq17(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins) {
  return build_posed(FormulationKind::Eq17, body, obstacle, margins);
}
ConstraintBlock build_eq18(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins) {
  return build_posed(FormulationKind::Eq18, body, obstacle, margins);
}
ConstraintBlock build_eq19(const HalfSpacePolygon& body, const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins) {
  return build_posed(FormulationKind::Eq19, body, obstacle, margins);
}
ConstraintBlock build_eq21(const HalfSpacePolygon& body_frame, const RigidTransform& pose,
                           const HalfSpacePolygon& obstacle,
                           const FormulationMargins& margins) {
  return build_collision_block(FormulationKind::Eq21, body_frame, pose, obstacle, margins);
}

ConstraintBlock build_containment(const HalfSpacePolygon& body,
                                  const HalfSpacePolygon& environment) {
  ConstraintBlock block;
  block.type_ = ConstraintBlock::Type::Containment;
  block.body_frame_ = body;
  block.pose_ = RigidTransform{};
  block.other_ = environment;
  block.shape_ = {environment.num_edges() * body.num_edges(), 0};
  block.layout_.per_pair_count = 0;
  return block;
}

VectorXd initial_aux_values(FormulationKind kind, const HalfSpacePolygon& body,
                            const HalfSpacePolygon& obstacle) {
  const int nv = body.num_edges();
  const int no = obstacle.num_edges();
  VectorXd aux(aux_count(kind, nv, no));

  switch (kind) {
    case FormulationKind::Eq14: {
      aux.head(nv * no).setConstant(1.0 / nv);
      aux.tail(no * nv).setConstant(1.0 / no);
      break;
    }
    case FormulationKind::Eq16:
    case FormulationKind::Eq17: {
      const SatResult sat = sat_disjoint(body, obstacle);
      Vector2d axis;
      double body_lo, obs_hi;
      if (sat.disjoint) {
        axis = sat.axis->axis;
        body_lo = std::numeric_limits<double>::infinity();
        obs_hi = -body_lo;
        for (const Vector2d& v : body.vertices()) body_lo = std::min(body_lo, axis.dot(v));
        for (const Vector2d& o : obstacle.vertices()) obs_hi = std::max(obs_hi, axis.dot(o));
      } else {
        // Overlapping seed pose: fall back to the centroid direction.
        Vector2d cb = Vector2d::Zero(), co = Vector2d::Zero();
        for (const Vector2d& v : body.vertices()) cb += v;
        for (const Vector2d& o : obstacle.vertices()) co += o;
        cb /= nv;
        co /= no;
        axis = cb - co;
        if (axis.norm() < 1e-9) axis = Vector2d(1.0, 0.0);
        axis.normalize();
        body_lo = axis.dot(cb);
        obs_hi = axis.dot(co);
      }
      if (kind == FormulationKind::Eq17) {
        aux << axis.x(), axis.y(), 0.5 * (body_lo + obs_hi);
      } else {
        aux << axis.x(), axis.y(), 0.25 * obs_hi + 0.75 * body_lo,
            0.75 * obs_hi + 0.25 * body_lo;
      }
      break;
    }
    case FormulationKind::Eq18:
    case FormulationKind::Eq19:
    case FormulationKind::Eq21:
      aux.setConstant(1e-2);
      break;
  }
  return aux;
}

}  // namespace parkplan
