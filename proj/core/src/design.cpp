#include "cablekit/design.hpp"

#include <cmath>

namespace cablekit {

InternalLayout internal_layout(Variant v) {
  switch (v) {
    case Variant::Screw:
    case Variant::Winder:
    case Variant::Gripper:
      return InternalLayout{{true, false}};  // (s, psi)
    case Variant::RotatableGripper:
      return InternalLayout{{true, true}};   // (s1, s2)
  }
  return InternalLayout{};
}

namespace {

void check_body(const DesignSpec& spec, BodyId b, std::vector<std::string>& out) {
  auto it = spec.bodies.find(b);
  if (it == spec.bodies.end()) {
    out.push_back(std::string("design lacks mass properties for body '") +
                  body_name(b) + "'");
    return;
  }
  if (!(it->second.mass > 0.0))
    out.push_back(std::string("body '") + body_name(b) + "' must have positive mass");
  if (!it->second.inertia.allFinite() || (it->second.inertia.array() < 0.0).any())
    out.push_back(std::string("body '") + body_name(b) + "' has invalid inertia");
}

}  // namespace

void collect_design_violations(const DesignSpec& spec, std::vector<std::string>& out) {
  const InternalLayout layout = internal_layout(spec.variant);
  for (int i = 0; i < 2; ++i) {
    if (!(spec.stroke[i][0] < spec.stroke[i][1]))
      out.push_back("stroke limits for internal coordinate " + std::to_string(i) +
                    " must satisfy min < max");
    if (layout.translational[i] && spec.stroke[i][0] < 0.0)
      out.push_back("translational stroke for coordinate " + std::to_string(i) +
                    " must start at or above zero");
  }

  if (!(spec.tension_min > 0.0)) out.push_back("t_min must be positive");
  if (!(spec.tension_max > spec.tension_min))
    out.push_back("t_max must exceed t_min");

  if (!spec.gravity.allFinite()) out.push_back("gravity must be finite");

  for (const auto& [coord, sp] : spec.springs) {
    const std::string tag = "spring on coordinate " + std::to_string(coord);
    if (coord < 0 || coord > 1) {
      out.push_back(tag + ": invalid coordinate index");
      continue;
    }
    if (!layout.translational[coord])
      out.push_back(tag + ": attached to a rotational coordinate");
    if (!(sp.stiffness > 0.0)) out.push_back(tag + ": stiffness must be positive");
    if (sp.min_extension < 0.0)
      out.push_back(tag + ": solid extension must be non-negative");
    if (sp.installed_extension < sp.min_extension)
      out.push_back(tag + ": installed extension below solid extension");
    if (sp.free_extension < sp.installed_extension)
      out.push_back(tag + ": free extension below installed extension");
    if (coord >= 0 && coord <= 1 &&
        spring_extension(sp, spec.stroke[coord][1]) < sp.min_extension)
      out.push_back(tag + ": reaches solid length inside the stroke");
  }

  auto check_aperture = [&out](const ApertureMap& map) {
    if (map.points.size() < 2) {
      out.push_back("aperture map needs at least two points");
      return;
    }
    for (std::size_t i = 0; i < map.points.size(); ++i) {
      if (map.points[i][1] < 0.0)
        out.push_back("aperture opening must be non-negative");
      if (i > 0 && map.points[i][0] <= map.points[i - 1][0])
        out.push_back("aperture travel must be strictly increasing");
    }
  };

  switch (spec.variant) {
    case Variant::Screw:
      if (!(spec.lead > 0.0)) out.push_back("screw variant needs a positive lead");
      check_body(spec, BodyId::Lower, out);
      check_body(spec, BodyId::Upper, out);
      check_body(spec, BodyId::Payload, out);
      break;
    case Variant::Winder:
      if (!(spec.winder.theta_max > 0.0))
        out.push_back("winder amplitude must be positive");
      if (!(spec.winder.stroke_period > 0.0))
        out.push_back("winder period must be positive");
      check_body(spec, BodyId::Lower, out);
      check_body(spec, BodyId::Upper, out);
      check_body(spec, BodyId::Payload, out);
      break;
    case Variant::Gripper:
      check_aperture(spec.aperture);
      if (spec.aperture.points.size() >= 2 &&
          (spec.aperture.points.front()[0] > spec.stroke[0][0] ||
           spec.aperture.points.back()[0] < spec.stroke[0][1]))
        out.push_back("aperture map does not cover the carrier stroke");
      check_body(spec, BodyId::Lower, out);
      check_body(spec, BodyId::Upper, out);
      check_body(spec, BodyId::Gripper, out);
      break;
    case Variant::RotatableGripper:
      if (!(spec.lead > 0.0))
        out.push_back("rotatable-gripper variant needs a positive lead");
      check_aperture(spec.aperture);
      if (spec.aperture.points.size() >= 2 &&
          (spec.aperture.points.front()[0] > spec.stroke[0][0] ||
           spec.aperture.points.back()[0] < spec.stroke[0][1]))
        out.push_back("aperture map does not cover the jaw-drive stroke");
      check_body(spec, BodyId::Upper, out);
      check_body(spec, BodyId::Middle, out);
      check_body(spec, BodyId::Lower, out);
      check_body(spec, BodyId::Gripper, out);
      if (spec.springs.find(0) == spec.springs.end() ||
          spec.springs.find(1) == spec.springs.end())
        out.push_back("rotatable-gripper variant needs springs on both ring coordinates");
      break;
  }

  if (spec.variant != Variant::RotatableGripper &&
      spec.springs.find(0) == spec.springs.end())
    out.push_back("carrier spring missing on coordinate 0");
}

void validate_design(const DesignSpec& spec) {
  std::vector<std::string> violations;
  collect_design_violations(spec, violations);
  if (!violations.empty())
    throw Error(ErrorCode::InvalidArgument, violations.front());
}

bool within_stroke(const DesignSpec& spec, const Vec2& internal, double tol) {
  for (int i = 0; i < 2; ++i) {
    if (internal[i] < spec.stroke[i][0] - tol) return false;
    if (internal[i] > spec.stroke[i][1] + tol) return false;
  }
  return true;
}

void require_within_stroke(const DesignSpec& spec, const Vec2& internal, double tol) {
  for (int i = 0; i < 2; ++i) {
    if (internal[i] < spec.stroke[i][0] - tol || internal[i] > spec.stroke[i][1] + tol)
      throw Error(ErrorCode::OutOfStroke,
                  "internal coordinate " + std::to_string(i) + " = " +
                      std::to_string(internal[i]) + " outside [" +
                      std::to_string(spec.stroke[i][0]) + ", " +
                      std::to_string(spec.stroke[i][1]) + "]");
  }
}

}  // namespace cablekit
