#include "cablekit/mechanism.hpp"

#include <algorithm>
#include <cmath>

namespace cablekit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double screw_angle(double lead, double s) {
  if (lead <= 0.0) throw Error(ErrorCode::InvalidArgument, "screw lead must be positive");
  return kTwoPi * s / lead;
}

double screw_slope(double lead) {
  if (lead <= 0.0) throw Error(ErrorCode::InvalidArgument, "screw lead must be positive");
  return kTwoPi / lead;
}

double winder_angle(const WinderParams& w, double s) {
  validate_winder(w);
  const double period = w.stroke_period;
  // Position within one full cycle [0, 2*period): rising then falling ramp.
  double u = std::fmod(s, 2.0 * period);
  if (u < 0.0) u += 2.0 * period;
  const double frac = (u <= period) ? (u / period) : (2.0 - u / period);
  return w.theta_max * frac;
}

double winder_slope(const WinderParams& w, double s, double tol) {
  validate_winder(w);
  if (winder_reversal_distance(w, s) <= tol) return 0.0;
  const double period = w.stroke_period;
  double u = std::fmod(s, 2.0 * period);
  if (u < 0.0) u += 2.0 * period;
  return (u < period) ? (w.theta_max / period) : -(w.theta_max / period);
}

double winder_reversal_distance(const WinderParams& w, double s) {
  validate_winder(w);
  const double period = w.stroke_period;
  const double k = std::round(s / period);
  return std::abs(s - k * period);
}

double spring_extension(const SpringParams& sp, double s) {
  return sp.installed_extension - s;
}

double spring_force(const SpringParams& sp, double x) {
  validate_spring(sp);
  if (x < sp.min_extension) {
    throw Error(ErrorCode::CoilBind,
                "spring extension " + std::to_string(x) + " below solid limit " +
                    std::to_string(sp.min_extension));
  }
  return sp.stiffness * (sp.free_extension - x);
}

double spring_force_at(const SpringParams& sp, double s) {
  return spring_force(sp, spring_extension(sp, s));
}

double spring_preload(const SpringParams& sp) {
  return sp.stiffness * (sp.free_extension - sp.installed_extension);
}

double spring_generalized_load(const SpringParams& sp, double s) {
  return -spring_force_at(sp, s);
}

double grip_aperture(const ApertureMap& map, double s) {
  validate_aperture(map);
  const auto& pts = map.points;
  if (s <= pts.front()[0]) return pts.front()[1];
  if (s >= pts.back()[0]) return pts.back()[1];
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (s <= pts[i][0]) {
      const double s0 = pts[i - 1][0], a0 = pts[i - 1][1];
      const double s1 = pts[i][0], a1 = pts[i][1];
      const double t = (s - s0) / (s1 - s0);
      return a0 + t * (a1 - a0);
    }
  }
  return pts.back()[1];
}

double aperture_slope(const ApertureMap& map, double s) {
  validate_aperture(map);
  const auto& pts = map.points;
  if (s < pts.front()[0] || s > pts.back()[0]) return 0.0;
  // Segment to the right of s; the final breakpoint uses the last segment.
  std::size_t i = 1;
  while (i + 1 < pts.size() && s >= pts[i][0]) ++i;
  const double ds = pts[i][0] - pts[i - 1][0];
  const double da = pts[i][1] - pts[i - 1][1];
  return da / ds;
}

double axial_contact_force(const SpringParams& sp, double s, double axial_load) {
  return std::max(0.0, spring_force_at(sp, s) - axial_load);
}

void validate_spring(const SpringParams& sp) {
  if (sp.stiffness <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "spring stiffness must be positive");
  if (sp.min_extension < 0.0)
    throw Error(ErrorCode::InvalidArgument, "spring solid extension must be non-negative");
  if (sp.installed_extension < sp.min_extension)
    throw Error(ErrorCode::InvalidArgument,
                "spring installed extension below solid extension");
  if (sp.free_extension < sp.installed_extension)
    throw Error(ErrorCode::InvalidArgument,
                "spring free extension below installed extension");
}

void validate_winder(const WinderParams& w) {
  if (w.theta_max <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "winder amplitude must be positive");
  if (w.stroke_period <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "winder period must be positive");
}

void validate_aperture(const ApertureMap& map) {
  if (map.points.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "aperture map needs at least two points");
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    if (map.points[i][1] < 0.0)
      throw Error(ErrorCode::InvalidArgument, "aperture opening must be non-negative");
    if (i > 0 && map.points[i][0] <= map.points[i - 1][0])
      throw Error(ErrorCode::InvalidArgument, "aperture travel must be strictly increasing");
  }
}

}  // namespace cablekit
