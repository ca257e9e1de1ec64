#pragma once

#include <vector>

#include "cablekit/geometry.hpp"

namespace cablekit {

/// Bodies in the active variant's kinematic chain, reference body first.
const std::vector<BodyId>& bodies_of(Variant v);

/// The body whose pose is the rigid-body part of the configuration.
BodyId reference_body(Variant v);

/// True when the body participates in the variant's chain.
bool has_body(Variant v, BodyId b);

/// World pose of a chain body at configuration q. Throws UnknownBody-style
/// InvalidArgument when the body is not part of the variant.
Pose body_pose(const RobotGeometry& geom, const DesignSpec& spec,
               const Configuration& q, BodyId body);

/// Same, without stroke validation (derivative probes, integrator trials).
Pose body_pose_raw(const RobotGeometry& geom, const DesignSpec& spec,
                   const Configuration& q, BodyId body);

/// Net rotation of the grasped object / payload about the column axis,
/// measured in the reference-body frame and unwrapped (not reduced mod 2*pi):
///   screw:             psi - 2*pi*s/lead
///   winder:            psi - winder_angle(s)
///   gripper:           psi
///   rotatable-gripper: -2*pi*s2/lead (right-handed groove)
double payload_angle(const DesignSpec& spec, const Configuration& q);

/// Gripper jaw opening for gripper variants; throws for the others.
double gripper_aperture(const DesignSpec& spec, const Configuration& q);

/// World positions of all cable tie-off points at configuration q.
/// Throws OutOfStroke when the internal coordinates leave the stroke box.
std::array<Vec3, kNumCables> attachment_points(const RobotGeometry& geom,
                                               const DesignSpec& spec,
                                               const Configuration& q);

/// Same, without stroke validation. Derivative probes and integrators may
/// legitimately evaluate a hair outside the stroke box.
std::array<Vec3, kNumCables> attachment_points_raw(const RobotGeometry& geom,
                                                   const DesignSpec& spec,
                                                   const Configuration& q);

/// Exact 3x8 Jacobian of the world position of `local` (a point fixed in
/// `body`'s frame) with respect to the configuration tangent
/// [dp_world, dtheta_body, dinternal].
Mat38 point_jacobian(const RobotGeometry& geom, const DesignSpec& spec,
                     const Configuration& q, BodyId body, const Vec3& local);

/// Exact 3x8 Jacobian mapping configuration velocity to `body`'s world
/// angular velocity.
Mat38 angular_jacobian(const RobotGeometry& geom, const DesignSpec& spec,
                       const Configuration& q, BodyId body);

/// World linear velocity Jacobian of the body origin (centre of mass).
inline Mat38 origin_jacobian(const RobotGeometry& geom, const DesignSpec& spec,
                             const Configuration& q, BodyId body) {
  return point_jacobian(geom, spec, q, body, Vec3::Zero());
}

}  // namespace cablekit
