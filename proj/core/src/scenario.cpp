#include "cablekit/scenario.hpp"

#include <cmath>

#include "cablekit/chain.hpp"

namespace cablekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3 on_circle(double radius, double azimuth_deg, double z) {
  const double a = azimuth_deg * kPi / 180.0;
  return Vec3(radius * std::cos(a), radius * std::sin(a), z);
}

/// Anchors sit on the corners of a 2 m square at the given height, listed
/// counter-clockwise starting at azimuth 45 degrees. Exact integer
/// coordinates keep the frame bitwise symmetric under sign flips.
void add_anchor_ring(std::vector<Vec3>& anchors, double z) {
  anchors.push_back(Vec3(1.0, 1.0, z));
  anchors.push_back(Vec3(-1.0, 1.0, z));
  anchors.push_back(Vec3(-1.0, -1.0, z));
  anchors.push_back(Vec3(1.0, -1.0, z));
}

/// Tie-off azimuth twist in degrees, alternating -/+ around the ring. A twist
/// of zero leaves the four cables of a ring unable to exert any yaw moment at
/// a centered pose (the length Jacobian loses rank there), so some twist is
/// mandatory. It is kept small because the twist is also the only thing that
/// breaks the quarter-turn symmetry of the frame: a small value keeps the
/// feasibility landscape quarter-turn symmetric to well under one workspace
/// grid cell while the conditioning stays orders of magnitude away from the
/// singularity threshold.
constexpr double kTipTwistDeg = 0.1;

/// Tie-off ring: radius rho, azimuths twisted off the anchor diagonals by
/// alternating -/+ twist_deg. The alternation makes the four cables of a
/// ring able to exert a net yaw moment of either sign while keeping the
/// centered pose balanced. Opposite tips are exact xy negations so the ring
/// is bitwise symmetric under a half turn.
Vec3 tip_point(double rho, int k, double twist_deg) {
  if (k >= 2) {
    const Vec3 t = tip_point(rho, k - 2, twist_deg);
    return Vec3(-t.x(), -t.y(), t.z());
  }
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  return on_circle(rho, 45.0 + 90.0 * k + sign * twist_deg, 0.0);
}

MassProps cuboid(double mass, const Vec3& full_extents) {
  MassProps mp;
  mp.mass = mass;
  const double x = full_extents.x(), y = full_extents.y(), z = full_extents.z();
  mp.inertia = (mass / 12.0) * Vec3(y * y + z * z, x * x + z * z, x * x + y * y);
  return mp;
}

}  // namespace

std::vector<std::string> scenario_violations(const Scenario& sc) {
  std::vector<std::string> out;
  collect_design_violations(sc.design, out);
  collect_geometry_violations(sc.geometry, sc.design, out);
  const SimParams& sp = sc.sim;
  if (!(sp.dt > 0.0)) out.push_back("integrator step must be positive");
  if (!(sp.control_period > 0.0))
    out.push_back("control period must be positive");
  else if (sp.control_period < sp.dt)
    out.push_back("control period must be at least one integrator step");
  if (!(sp.clearance >= 0.0)) out.push_back("clearance must be non-negative");
  if (!(sp.cable_stiffness > 0.0)) out.push_back("cable stiffness must be positive");
  if (!(sp.cable_damping >= 0.0)) out.push_back("cable damping must be non-negative");
  if (!(sp.singularity_threshold > 1.0))
    out.push_back("singularity threshold must exceed 1");
  return out;
}

void validate_scenario(const Scenario& sc) {
  const std::vector<std::string> violations = scenario_violations(sc);
  if (!violations.empty())
    throw Error(ErrorCode::InvalidArgument, violations.front());
}

Scenario canonical_scenario(Variant v) {
  Scenario sc;
  sc.name = std::string("canonical-") + variant_name(v);

  RobotGeometry& g = sc.geometry;
  DesignSpec& d = sc.design;
  d.variant = v;

  // Frame: 2 m square of anchors on the ceiling (z = 2) and floor (z = 0).
  add_anchor_ring(g.anchors, 2.0);
  add_anchor_ring(g.anchors, 0.0);

  const double rho = 0.15;
  g.rod_radius = rho;
  // Axial spacing between the cabled rings. 0.30 m keeps the cable-length
  // Jacobian full rank across the whole stroke box: with tighter spacing the
  // internal columns become linearly dependent on the base columns along a
  // curve that crosses the stroke band (verified by a dense determinant scan
  // over stroke x bearing angle x position).
  g.carrier_offset = 0.30;

  const Vec3 segment_box(0.12, 0.12, 0.06);  // rod segments and rings
  const Vec3 payload_box(0.10, 0.10, 0.10);  // carried object / gripper body

  // Common catalogue values.
  d.tension_min = 5.0;
  d.tension_max = 500.0;
  d.lead = 0.05;
  d.winder = WinderParams{2.0 * kPi, 0.1};
  d.aperture.points = {{0.0, 0.0}, {0.05, 0.0}, {0.2, 0.08}};

  SpringParams spring;
  spring.stiffness = 500.0;
  spring.free_extension = 0.29;
  spring.installed_extension = 0.20;
  spring.min_extension = 0.0;

  const double s_max = 0.2;

  switch (v) {
    case Variant::Screw:
    case Variant::Winder:
    case Variant::Gripper: {
      g.payload_offset = 0.15;
      d.stroke = {{{0.0, s_max}, {-kPi, kPi}}};
      d.springs[0] = spring;

      // Ceiling cables to the carrier, floor cables to the body that hangs
      // below the bearing (the rod itself, or the gripper for that variant).
      const BodyId lower_target =
          (v == Variant::Gripper) ? BodyId::Gripper : BodyId::Lower;
      for (int k = 0; k < 4; ++k)
        g.attachments.push_back({BodyId::Upper, tip_point(rho, k, kTipTwistDeg)});
      for (int k = 0; k < 4; ++k)
        g.attachments.push_back({lower_target, tip_point(rho, k, kTipTwistDeg)});

      g.shapes[BodyId::Lower] = {0.5 * segment_box};
      g.shapes[BodyId::Upper] = {0.5 * segment_box};
      if (v == Variant::Gripper) {
        g.shapes[BodyId::Gripper] = {0.5 * payload_box};
        d.bodies[BodyId::Lower] = cuboid(0.5, segment_box);
        d.bodies[BodyId::Upper] = cuboid(0.5, segment_box);
        d.bodies[BodyId::Gripper] = cuboid(2.0, payload_box);
      } else {
        g.shapes[BodyId::Payload] = {0.5 * payload_box};
        d.bodies[BodyId::Lower] = cuboid(0.5, segment_box);
        d.bodies[BodyId::Upper] = cuboid(0.5, segment_box);
        d.bodies[BodyId::Payload] = cuboid(2.0, payload_box);
      }
      break;
    }
    case Variant::RotatableGripper: {
      // The middle ring rides at carrier_offset + s2 below the platform; the
      // lower ring must clear the middle ring's full travel. Offsets chosen
      // by the same determinant scan as above: shallower middle offsets put a
      // rank-loss curve of the jaw column inside the stroke square.
      g.carrier_offset = 0.25;
      g.ring_offset = 0.55;
      g.gripper_offset = 0.12;
      d.stroke = {{{0.0, s_max}, {0.0, s_max}}};
      d.springs[0] = spring;
      d.springs[1] = spring;

      // Ceiling cables to the platform; floor cables alternate between the
      // middle ring (drives the jaws) and the lower ring (carries the
      // gripper), two cables each on opposite corners.
      for (int k = 0; k < 4; ++k)
        g.attachments.push_back({BodyId::Upper, tip_point(rho, k, kTipTwistDeg)});
      for (int k = 0; k < 4; ++k) {
        const BodyId target = (k % 2 == 0) ? BodyId::Middle : BodyId::Lower;
        g.attachments.push_back({target, tip_point(rho, k, kTipTwistDeg)});
      }

      g.shapes[BodyId::Upper] = {0.5 * segment_box};
      g.shapes[BodyId::Middle] = {0.5 * segment_box};
      g.shapes[BodyId::Lower] = {0.5 * segment_box};
      g.shapes[BodyId::Gripper] = {0.5 * payload_box};
      d.bodies[BodyId::Upper] = cuboid(0.5, segment_box);
      d.bodies[BodyId::Middle] = cuboid(0.5, segment_box);
      d.bodies[BodyId::Lower] = cuboid(0.5, segment_box);
      d.bodies[BodyId::Gripper] = cuboid(2.0, payload_box);
      break;
    }
  }

  validate_scenario(sc);
  return sc;
}

}  // namespace cablekit
