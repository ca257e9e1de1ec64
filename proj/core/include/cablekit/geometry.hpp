#pragma once

#include <map>
#include <string>
#include <vector>

#include "cablekit/design.hpp"
#include "cablekit/types.hpp"

namespace cablekit {

/// Axis-aligned box collision shape in the body frame, centered at the body
/// origin, plus cable tie-off points in body coordinates.
struct BodyShape {
  Vec3 half_extents{Vec3::Zero()};
};

/// One cable attachment: which body it ties to and where in that body frame.
struct Attachment {
  BodyId body = BodyId::Lower;
  Vec3 point{Vec3::Zero()};
};

/// Frame and end-effector geometry: world cable anchors, per-cable
/// attachments, body collision boxes, and the axial stack-up constants of
/// the reconfigurable column.
struct RobotGeometry {
  std::vector<Vec3> anchors;          // kNumCables world anchor points
  std::vector<Attachment> attachments;  // kNumCables tie-offs, same index
  std::map<BodyId, BodyShape> shapes;

  double rod_radius = 0.0;   // m, tie-off circle radius; also the scaling
                             // length for conditioning rotational columns

  // Axial spacing of the column at zero internal travel.
  double carrier_offset = 0.0;   // reference origin -> carrier origin (+z)
  double payload_offset = 0.0;   // reference origin -> payload/gripper (-z)
  double ring_offset = 0.0;      // rotatable-gripper: upper -> lower ring (-z)
  double gripper_offset = 0.0;   // rotatable-gripper: lower ring -> gripper (-z)
};

/// Appends one message per rule the geometry violates against the design:
/// anchor and attachment counts, bodies present in the variant's chain,
/// positive offsets, boxes with positive extents.
void collect_geometry_violations(const RobotGeometry& geom, const DesignSpec& spec,
                                 std::vector<std::string>& out);

/// Throws InvalidArgument with the first violation message, if any.
void validate_geometry(const RobotGeometry& geom, const DesignSpec& spec);

}  // namespace cablekit
