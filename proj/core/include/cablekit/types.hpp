#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cablekit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat38 = Eigen::Matrix<double, 3, 8>;
using Mat68 = Eigen::Matrix<double, 6, 8>;
using Quat = Eigen::Quaterniond;

inline constexpr int kNumCables = 8;
inline constexpr int kNumCoords = 8;  // 6 rigid-body + 2 internal

/// Error categories carried by every cablekit exception.
enum class ErrorCode {
  InvalidArgument,   // malformed input (bad sizes, bad names, bad values)
  OutOfStroke,       // internal coordinate outside its travel limits
  CoilBind,          // spring compressed past its solid length
  Singular,          // Jacobian rank loss / transmission reversal
  NoConvergence,     // iterative solve exhausted its budget
  Infeasible,        // no solution within actuation limits
  Schema,            // scenario file violates the documented schema
  Io,                // file could not be read or written
};

const char* error_code_name(ErrorCode code);

/// Exception type for all contract violations in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Rigid-body pose: world position of the body origin and a unit quaternion
/// mapping body coordinates to world coordinates.
struct Pose {
  Vec3 position{Vec3::Zero()};
  Quat orientation{Quat::Identity()};

  Vec3 apply(const Vec3& local) const {
    return position + orientation * local;
  }

  static Pose identity() { return Pose{}; }
};

/// Quaternion drift guard: renormalize only when the norm has wandered.
inline void renormalize(Quat& q, double tol = 1e-9) {
  const double n2 = q.squaredNorm();
  if (std::abs(n2 - 1.0) > 2.0 * tol) q.normalize();
}

/// Exponential map so(3) -> SO(3), robust near zero.
Quat exp_so3(const Vec3& w);

/// Logarithm map SO(3) -> so(3), robust near zero and near pi.
Vec3 log_so3(const Quat& q);

/// The reconfigurable end-effector family.
enum class Variant : std::uint8_t {
  Screw,             // bearing-split rod, screw transmission to the payload
  Winder,            // bearing-split rod, cam-winder transmission (reversing)
  Gripper,           // yaw-locked rod, screw-driven gripper aperture
  RotatableGripper,  // dual-ring platform, gripper yaw driven by ring travel
};

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// Rigid bodies that can appear in a kinematic chain. Not every variant uses
/// every body; chain queries reject bodies absent from the active variant.
enum class BodyId : std::uint8_t {
  Lower,    // lower rod segment / lower ring
  Upper,    // upper rod segment / upper platform
  Payload,  // object carried below the bearing (screw/winder variants)
  Middle,   // middle ring (rotatable-gripper variant)
  Gripper,  // gripper body (gripper variants)
};

const char* body_name(BodyId b);
BodyId body_from_name(const std::string& name);

/// Full configuration of the 8-DoF mechanism: reference-body pose plus the
/// two internal coordinates. The meaning of internal[0]/internal[1] depends
/// on the variant:
///   screw/winder:      internal = (s, psi)   [carrier travel, free yaw]
///   gripper:           internal = (s, psi)   [carrier travel, gripper yaw]
///   rotatable-gripper: internal = (s1, s2)   [lower-ring, middle-ring travel]
struct Configuration {
  Pose base;
  Vec2 internal{Vec2::Zero()};
};

/// Pack a tangent-space displacement: [dp_world(3), dtheta_body(3), dinternal(2)].
/// Poses are updated as p += dp, R <- R * exp(dtheta), internal += dinternal.
[[nodiscard]] Configuration retract(const Configuration& q, const Vec8& delta);

/// Tangent-space difference delta with retract(a, delta) == b (up to rounding).
Vec8 local_difference(const Configuration& a, const Configuration& b);

/// Scalar separation between configurations, used for convergence checks:
/// sqrt(|dp|^2 + char_len^2 |dtheta|^2 + |dinternal|^2).
double configuration_distance(const Configuration& a, const Configuration& b,
                              double char_len = 1.0);

}  // namespace cablekit
