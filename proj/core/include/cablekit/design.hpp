#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cablekit/mechanism.hpp"
#include "cablekit/types.hpp"

namespace cablekit {

/// Mass properties of one rigid body: mass and the principal inertia
/// diagonal expressed in the body frame.
struct MassProps {
  double mass = 0.0;        // kg
  Vec3 inertia{Vec3::Zero()};  // kg m^2, body-frame principal diagonal
};

/// Per-internal-coordinate travel limits [lo, hi].
using StrokeLimits = std::array<std::array<double, 2>, 2>;

/// Everything that defines a mechanism variant apart from cable geometry:
/// transmission parameters, springs, travel limits, actuation bounds, and
/// mass properties.
struct DesignSpec {
  Variant variant = Variant::Screw;

  // Transmissions. Only the fields relevant to `variant` are used:
  //   screw / gripper:    lead (carrier screw)
  //   winder:             winder
  //   rotatable-gripper:  lead (ring screws, drives gripper yaw via s2)
  double lead = 0.0;
  WinderParams winder;
  ApertureMap aperture;  // gripper variants

  // One spring per translational internal coordinate, keyed by coordinate
  // index (0 and/or 1). Coordinates without an entry carry no spring.
  std::map<int, SpringParams> springs;

  StrokeLimits stroke{{{0.0, 0.0}, {0.0, 0.0}}};

  double tension_min = 0.0;  // N
  double tension_max = 0.0;  // N

  std::map<BodyId, MassProps> bodies;

  Vec3 gravity{0.0, 0.0, -9.81};  // m/s^2, world frame
};

/// Index of each internal coordinate's role for a variant.
/// Translational coordinates move a carrier along the column axis; the
/// rotational coordinate (if any) is a free yaw about it.
struct InternalLayout {
  std::array<bool, 2> translational{true, true};
};

InternalLayout internal_layout(Variant v);

/// Appends one message per rule the spec violates (transmissions present and
/// valid, stroke strictly ordered, tension band positive and ordered, bodies
/// present with positive masses, aperture map covering the travel range for
/// gripper variants). Appends nothing when the spec is valid.
void collect_design_violations(const DesignSpec& spec, std::vector<std::string>& out);

/// Throws InvalidArgument with the first violation message, if any.
void validate_design(const DesignSpec& spec);

/// True when internal coordinates lie inside the stroke box (closed).
bool within_stroke(const DesignSpec& spec, const Vec2& internal, double tol = 0.0);

/// Throws OutOfStroke when the internal coordinates leave the stroke box.
void require_within_stroke(const DesignSpec& spec, const Vec2& internal,
                           double tol = 1e-12);

}  // namespace cablekit
