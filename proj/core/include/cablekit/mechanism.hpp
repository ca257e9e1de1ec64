#pragma once

#include <array>
#include <vector>

#include "cablekit/types.hpp"

namespace cablekit {

/// Helical spring acting along an internal travel coordinate. The spring is
/// anchored to the reference segment and compressed as the carrier advances:
/// extension(s) = installed_extension - s.
struct SpringParams {
  double stiffness = 0.0;            // N/m
  double free_extension = 0.0;       // m, unloaded length of the working range
  double installed_extension = 0.0;  // m, extension at s = 0
  double min_extension = 0.0;        // m, solid length of the working range
};

/// Cam winder: triangular-wave transmission from carrier travel to output
/// angle. One full output cycle spans 2 * stroke_period of travel, with
/// direction reversals at integer multiples of stroke_period.
struct WinderParams {
  double theta_max = 0.0;       // rad, peak output angle
  double stroke_period = 0.0;   // m, travel between reversals
};

/// Piecewise-linear map from carrier travel to gripper jaw opening.
/// Breakpoints are (travel, opening) pairs with strictly increasing travel.
struct ApertureMap {
  std::vector<std::array<double, 2>> points;
};

/// Screw transmission: output angle per unit travel, 2*pi per lead.
double screw_angle(double lead, double s);
double screw_slope(double lead);  // d(angle)/ds, constant

/// Winder transmission angle at travel s. The triangular wave is even and
/// periodic, so the map is defined for all real s (derivative probes may
/// step slightly outside the stroke).
double winder_angle(const WinderParams& w, double s);

/// Winder transmission slope d(angle)/ds at travel s. Exactly zero when s
/// sits on a reversal (within `tol` of an integer multiple of the period).
double winder_slope(const WinderParams& w, double s, double tol = 1e-9);

/// Distance from s to the nearest winder reversal point.
double winder_reversal_distance(const WinderParams& w, double s);

/// Spring extension at carrier travel s.
double spring_extension(const SpringParams& sp, double s);

/// Spring force magnitude at extension x: stiffness * (free_extension - x).
/// Positive values push the carrier toward larger extension (restoring).
/// Throws CoilBind when x < min_extension.
double spring_force(const SpringParams& sp, double x);

/// Spring force at carrier travel s (compression grows with s, so this is
/// preload + stiffness * s where preload = k * (free - installed)).
double spring_force_at(const SpringParams& sp, double s);

/// Preload force at s = 0.
double spring_preload(const SpringParams& sp);

/// Generalized load the spring exerts on the travel coordinate. The spring
/// resists advancing travel, so this is -spring_force_at(sp, s).
double spring_generalized_load(const SpringParams& sp, double s);

/// Gripper jaw opening at travel s (linear interpolation between breakpoints,
/// clamped to the end values outside the covered range).
double grip_aperture(const ApertureMap& map, double s);

/// Slope d(opening)/ds of the segment containing s. On the closed plateau the
/// breakpoints repeat the same opening, so the slope is exactly zero there.
double aperture_slope(const ApertureMap& map, double s);

/// Net axial contact force between carrier and reference segment when an
/// external axial load presses against the spring: max(0, spring - load).
double axial_contact_force(const SpringParams& sp, double s, double axial_load);

/// Validates a spring (positive stiffness, ordered extensions); throws.
void validate_spring(const SpringParams& sp);

/// Validates a winder (positive amplitude and period); throws.
void validate_winder(const WinderParams& w);

/// Validates an aperture map (>= 2 points, strictly increasing travel,
/// non-negative openings); throws.
void validate_aperture(const ApertureMap& map);

}  // namespace cablekit
