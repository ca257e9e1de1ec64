#include "cablekit/chain.hpp"

#include <cmath>

namespace cablekit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Placement of a chain body relative to the reference body. Every body in
/// this family sits on the column axis and rotates only about it, so the
/// relative pose is (0, 0, h(u)) with yaw phi(u), and the partials reduce to
/// four scalars.
struct Placement {
  double h = 0.0;       // axial offset along reference z
  double phi = 0.0;     // yaw about reference z
  double dh[2] = {0.0, 0.0};
  double dphi[2] = {0.0, 0.0};
};

Placement placement(const RobotGeometry& geom, const DesignSpec& spec,
                    const Vec2& u, BodyId body) {
  Placement pl;
  const Variant v = spec.variant;
  switch (v) {
    case Variant::Screw:
    case Variant::Winder: {
      const double s = u[0], psi = u[1];
      if (body == BodyId::Lower) return pl;
      if (body == BodyId::Upper) {
        pl.h = geom.carrier_offset + s;
        pl.dh[0] = 1.0;
        pl.phi = psi;
        pl.dphi[1] = 1.0;
        return pl;
      }
      if (body == BodyId::Payload) {
        pl.h = -geom.payload_offset;
        const double sigma = (v == Variant::Screw) ? screw_angle(spec.lead, s)
                                                   : winder_angle(spec.winder, s);
        const double dsigma = (v == Variant::Screw) ? screw_slope(spec.lead)
                                                    : winder_slope(spec.winder, s);
        pl.phi = psi - sigma;
        pl.dphi[0] = -dsigma;
        pl.dphi[1] = 1.0;
        return pl;
      }
      break;
    }
    case Variant::Gripper: {
      const double s = u[0], psi = u[1];
      if (body == BodyId::Lower) return pl;
      if (body == BodyId::Upper) {
        pl.h = geom.carrier_offset + s;
        pl.dh[0] = 1.0;
        return pl;  // carrier yaw-locked to the rod
      }
      if (body == BodyId::Gripper) {
        pl.h = -geom.payload_offset;
        pl.phi = psi;
        pl.dphi[1] = 1.0;
        return pl;
      }
      break;
    }
    case Variant::RotatableGripper: {
      const double s1 = u[0], s2 = u[1];
      if (body == BodyId::Upper) return pl;
      if (body == BodyId::Middle) {
        pl.h = -(geom.carrier_offset + s2);
        pl.dh[1] = -1.0;
        return pl;
      }
      if (body == BodyId::Lower) {
        pl.h = -(geom.ring_offset + s1);
        pl.dh[0] = -1.0;
        return pl;
      }
      if (body == BodyId::Gripper) {
        // Right-handed groove: the driven body turns by -2*pi*s/lead
        // relative to its nut, same convention as the payload shaft.
        pl.h = -(geom.ring_offset + s1 + geom.gripper_offset);
        pl.dh[0] = -1.0;
        pl.phi = -screw_angle(spec.lead, s2);
        pl.dphi[1] = -screw_slope(spec.lead);
        return pl;
      }
      break;
    }
  }
  throw Error(ErrorCode::InvalidArgument,
              std::string("body '") + body_name(body) + "' is not part of variant '" +
                  variant_name(v) + "'");
}

inline Mat3 yaw(double phi) {
  return Eigen::AngleAxisd(phi, Vec3::UnitZ()).toRotationMatrix();
}

}  // namespace

const std::vector<BodyId>& bodies_of(Variant v) {
  static const std::vector<BodyId> rod = {BodyId::Lower, BodyId::Upper, BodyId::Payload};
  static const std::vector<BodyId> grip = {BodyId::Lower, BodyId::Upper, BodyId::Gripper};
  static const std::vector<BodyId> rings = {BodyId::Upper, BodyId::Middle, BodyId::Lower,
                                            BodyId::Gripper};
  switch (v) {
    case Variant::Screw:
    case Variant::Winder:
      return rod;
    case Variant::Gripper:
      return grip;
    case Variant::RotatableGripper:
      return rings;
  }
  return rod;
}

BodyId reference_body(Variant v) {
  return v == Variant::RotatableGripper ? BodyId::Upper : BodyId::Lower;
}

bool has_body(Variant v, BodyId b) {
  const auto& list = bodies_of(v);
  for (BodyId x : list)
    if (x == b) return true;
  return false;
}

Pose body_pose_raw(const RobotGeometry& geom, const DesignSpec& spec,
                   const Configuration& q, BodyId body) {
  const Placement pl = placement(geom, spec, q.internal, body);
  Pose out;
  out.position = q.base.position + q.base.orientation * Vec3(0.0, 0.0, pl.h);
  out.orientation = q.base.orientation * Quat(Eigen::AngleAxisd(pl.phi, Vec3::UnitZ()));
  return out;
}

Pose body_pose(const RobotGeometry& geom, const DesignSpec& spec,
               const Configuration& q, BodyId body) {
  require_within_stroke(spec, q.internal);
  return body_pose_raw(geom, spec, q, body);
}

double payload_angle(const DesignSpec& spec, const Configuration& q) {
  const double a = q.internal[0], b = q.internal[1];
  switch (spec.variant) {
    case Variant::Screw:
      return b - screw_angle(spec.lead, a);
    case Variant::Winder:
      return b - winder_angle(spec.winder, a);
    case Variant::Gripper:
      return b;
    case Variant::RotatableGripper:
      return -screw_angle(spec.lead, b);
  }
  return 0.0;
}

double gripper_aperture(const DesignSpec& spec, const Configuration& q) {
  require_within_stroke(spec, q.internal);
  switch (spec.variant) {
    case Variant::Gripper:
      return grip_aperture(spec.aperture, q.internal[0]);
    case Variant::RotatableGripper:
      return grip_aperture(spec.aperture, q.internal[0]);
    default:
      throw Error(ErrorCode::InvalidArgument,
                  std::string("variant '") + variant_name(spec.variant) +
                      "' has no gripper");
  }
}

std::array<Vec3, kNumCables> attachment_points_raw(const RobotGeometry& geom,
                                                   const DesignSpec& spec,
                                                   const Configuration& q) {
  std::array<Vec3, kNumCables> pts;
  // Cache body poses; attachments reference at most three distinct bodies.
  std::array<Pose, 5> pose_cache;
  std::array<bool, 5> cached = {false, false, false, false, false};
  for (int i = 0; i < kNumCables; ++i) {
    const Attachment& att = geom.attachments[static_cast<std::size_t>(i)];
    const auto idx = static_cast<std::size_t>(att.body);
    if (!cached[idx]) {
      const Placement pl = placement(geom, spec, q.internal, att.body);
      pose_cache[idx].position =
          q.base.position + q.base.orientation * Vec3(0.0, 0.0, pl.h);
      pose_cache[idx].orientation =
          q.base.orientation * Quat(Eigen::AngleAxisd(pl.phi, Vec3::UnitZ()));
      cached[idx] = true;
    }
    pts[static_cast<std::size_t>(i)] = pose_cache[idx].apply(att.point);
  }
  return pts;
}

std::array<Vec3, kNumCables> attachment_points(const RobotGeometry& geom,
                                               const DesignSpec& spec,
                                               const Configuration& q) {
  require_within_stroke(spec, q.internal);
  return attachment_points_raw(geom, spec, q);
}

Mat38 point_jacobian(const RobotGeometry& geom, const DesignSpec& spec,
                     const Configuration& q, BodyId body, const Vec3& local) {
  const Placement pl = placement(geom, spec, q.internal, body);
  const Mat3 R = q.base.orientation.toRotationMatrix();
  const Vec3 rel = Vec3(0.0, 0.0, pl.h) + yaw(pl.phi) * local;  // base frame

  Mat38 J;
  J.block<3, 3>(0, 0) = Mat3::Identity();
  // Base rotation columns: d/d(dtheta_k) [R exp(dtheta) rel] = R (e_k x rel).
  Mat3 skew;
  skew << 0, -rel.z(), rel.y(), rel.z(), 0, -rel.x(), -rel.y(), rel.x(), 0;
  J.block<3, 3>(0, 3) = -R * skew;  // R * [e_k x rel] = -R * [rel]x e_k
  // Internal columns: axial travel plus yaw of the rotated lever arm.
  const Vec3 lever = Vec3::UnitZ().cross(yaw(pl.phi) * local);
  for (int j = 0; j < 2; ++j) {
    J.col(6 + j) = R * (pl.dh[j] * Vec3::UnitZ() + pl.dphi[j] * lever);
  }
  return J;
}

Mat38 angular_jacobian(const RobotGeometry& geom, const DesignSpec& spec,
                       const Configuration& q, BodyId body) {
  const Placement pl = placement(geom, spec, q.internal, body);
  const Mat3 R = q.base.orientation.toRotationMatrix();
  Mat38 J = Mat38::Zero();
  J.block<3, 3>(0, 3) = R;  // omega = R * dtheta_dot (body-frame tangent)
  for (int j = 0; j < 2; ++j) {
    J.col(6 + j) = R * (pl.dphi[j] * Vec3::UnitZ());
  }
  return J;
}

}  // namespace cablekit
