#include "cablekit/types.hpp"

#include <cmath>

namespace cablekit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::OutOfStroke:     return "out of stroke";
    case ErrorCode::CoilBind:        return "coil bind";
    case ErrorCode::Singular:        return "singular";
    case ErrorCode::NoConvergence:   return "no convergence";
    case ErrorCode::Infeasible:      return "infeasible";
    case ErrorCode::Schema:          return "schema error";
    case ErrorCode::Io:              return "io error";
  }
  return "unknown error";
}

Quat exp_so3(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  double half_sinc;  // sin(theta/2)/theta
  double cos_half;
  if (theta2 < 1e-16) {
    // Series: sin(t/2)/t = 1/2 - t^2/48, cos(t/2) = 1 - t^2/8.
    half_sinc = 0.5 - theta2 / 48.0;
    cos_half = 1.0 - theta2 / 8.0;
  } else {
    const double theta = std::sqrt(theta2);
    half_sinc = std::sin(0.5 * theta) / theta;
    cos_half = std::cos(0.5 * theta);
  }
  return Quat(cos_half, half_sinc * w.x(), half_sinc * w.y(), half_sinc * w.z());
}

Vec3 log_so3(const Quat& q_in) {
  Quat q = q_in;
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();  // principal branch
  const Vec3 v(q.x(), q.y(), q.z());
  const double vn = v.norm();
  if (vn < 1e-12) {
    return 2.0 * v;  // theta ~ 0
  }
  const double theta = 2.0 * std::atan2(vn, q.w());
  return (theta / vn) * v;
}

Configuration retract(const Configuration& q, const Vec8& delta) {
  Configuration out = q;
  out.base.position += delta.segment<3>(0);
  out.base.orientation = q.base.orientation * exp_so3(delta.segment<3>(3));
  renormalize(out.base.orientation);
  out.internal += delta.segment<2>(6);
  return out;
}

Vec8 local_difference(const Configuration& a, const Configuration& b) {
  Vec8 d;
  d.segment<3>(0) = b.base.position - a.base.position;
  d.segment<3>(3) = log_so3(a.base.orientation.conjugate() * b.base.orientation);
  d.segment<2>(6) = b.internal - a.internal;
  return d;
}

double configuration_distance(const Configuration& a, const Configuration& b,
                              double char_len) {
  const Vec8 d = local_difference(a, b);
  return std::sqrt(d.segment<3>(0).squaredNorm() +
                   char_len * char_len * d.segment<3>(3).squaredNorm() +
                   d.segment<2>(6).squaredNorm());
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Screw:            return "screw";
    case Variant::Winder:           return "winder";
    case Variant::Gripper:          return "gripper";
    case Variant::RotatableGripper: return "rotatable-gripper";
  }
  return "unknown";
}

Variant variant_from_name(const std::string& name) {
  if (name == "screw") return Variant::Screw;
  if (name == "winder") return Variant::Winder;
  if (name == "gripper") return Variant::Gripper;
  if (name == "rotatable-gripper") return Variant::RotatableGripper;
  throw Error(ErrorCode::InvalidArgument, "unknown variant '" + name + "'");
}

const char* body_name(BodyId b) {
  switch (b) {
    case BodyId::Lower:   return "lower";
    case BodyId::Upper:   return "upper";
    case BodyId::Payload: return "payload";
    case BodyId::Middle:  return "middle";
    case BodyId::Gripper: return "gripper";
  }
  return "unknown";
}

BodyId body_from_name(const std::string& name) {
  if (name == "lower") return BodyId::Lower;
  if (name == "upper") return BodyId::Upper;
  if (name == "payload") return BodyId::Payload;
  if (name == "middle") return BodyId::Middle;
  if (name == "gripper") return BodyId::Gripper;
  throw Error(ErrorCode::InvalidArgument, "unknown body '" + name + "'");
}

}  // namespace cablekit
