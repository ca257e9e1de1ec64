#include "cablekit/geometry.hpp"

#include "cablekit/chain.hpp"

namespace cablekit {

void collect_geometry_violations(const RobotGeometry& geom, const DesignSpec& spec,
                                 std::vector<std::string>& out) {
  if (geom.anchors.size() != kNumCables)
    out.push_back("expected " + std::to_string(kNumCables) + " anchors, got " +
                  std::to_string(geom.anchors.size()));
  if (geom.attachments.size() != kNumCables)
    out.push_back("expected " + std::to_string(kNumCables) + " attachments, got " +
                  std::to_string(geom.attachments.size()));
  for (const Vec3& a : geom.anchors)
    if (!a.allFinite()) {
      out.push_back("anchor coordinates must be finite");
      break;
    }

  for (std::size_t i = 0; i < geom.attachments.size(); ++i) {
    const Attachment& att = geom.attachments[i];
    if (!has_body(spec.variant, att.body))
      out.push_back("cable " + std::to_string(i) + " attaches to body '" +
                    body_name(att.body) + "' which is not in variant '" +
                    variant_name(spec.variant) + "'");
    if (!att.point.allFinite())
      out.push_back("cable " + std::to_string(i) + " attachment point must be finite");
  }

  if (!(geom.rod_radius > 0.0)) out.push_back("rod radius must be positive");
  if (!(geom.carrier_offset > 0.0)) out.push_back("carrier offset must be positive");
  if (spec.variant == Variant::RotatableGripper) {
    if (!(geom.ring_offset > 0.0) || !(geom.gripper_offset > 0.0))
      out.push_back("ring and gripper offsets must be positive");
    double gap_needed = spec.stroke[1][1] - spec.stroke[0][0];
    auto mid = geom.shapes.find(BodyId::Middle);
    auto low = geom.shapes.find(BodyId::Lower);
    if (mid != geom.shapes.end() && low != geom.shapes.end())
      gap_needed += mid->second.half_extents.z() + low->second.half_extents.z();
    if (geom.ring_offset - geom.carrier_offset < gap_needed)
      out.push_back("lower ring must clear the middle ring over the full stroke");
  } else {
    if (!(geom.payload_offset > 0.0)) out.push_back("payload offset must be positive");
  }

  for (BodyId b : bodies_of(spec.variant)) {
    auto it = geom.shapes.find(b);
    if (it == geom.shapes.end()) {
      out.push_back(std::string("missing collision shape for body '") + body_name(b) +
                    "'");
      continue;
    }
    if (!(it->second.half_extents.array() > 0.0).all())
      out.push_back(std::string("collision box for body '") + body_name(b) +
                    "' must have positive extents");
  }
}

void validate_geometry(const RobotGeometry& geom, const DesignSpec& spec) {
  std::vector<std::string> violations;
  collect_geometry_violations(geom, spec, violations);
  if (!violations.empty())
    throw Error(ErrorCode::InvalidArgument, violations.front());
}

}  // namespace cablekit
