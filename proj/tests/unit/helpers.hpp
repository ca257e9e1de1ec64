#pragma once

#include <random>

#include "cablekit/kinematics.hpp"
#include "cablekit/scenario.hpp"

namespace testutil {

using namespace cablekit;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-6) v = Vec3(n(rng), n(rng), n(rng));
  return v.normalized();
}

/// Random configuration inside the sampling envelope where the length
/// Jacobian is verified full rank for every built-in design: positions in a
/// box well inside the frame, yaw free, a small base tilt, and internal
/// coordinates kept away from the structural singularities (bearing yaw at
/// +-pi/2, winder transmission reversals).
inline Configuration random_configuration(const DesignSpec& spec,
                                          std::mt19937_64& rng) {
  Configuration q;
  q.base.position = Vec3(uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6),
                         uniform(rng, 0.8, 1.4));
  const double yaw = uniform(rng, -3.1, 3.1);
  const double tilt = uniform(rng, 0.0, 0.05);
  q.base.orientation = Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ())) *
                       exp_so3(tilt * random_unit(rng));

  const double s_lo = spec.stroke[0][0], s_hi = spec.stroke[0][1];
  double s = uniform(rng, s_lo + 0.005, s_hi - 0.005);
  if (spec.variant == Variant::Winder) {
    // keep clear of the transmission reversals
    while (winder_reversal_distance(spec.winder, s) < 5e-3)
      s = uniform(rng, s_lo + 0.005, s_hi - 0.005);
  }
  double second;
  if (internal_layout(spec.variant).translational[1]) {
    second = uniform(rng, spec.stroke[1][0] + 0.005, spec.stroke[1][1] - 0.005);
  } else {
    second = uniform(rng, -1.3, 1.3);  // bearing yaw, away from +-pi/2
  }
  q.internal = Vec2(s, second);
  return q;
}

/// Warm-start perturbation: up to `pos` metres of translation, `ang` radians
/// of base rotation, and the same magnitudes on the internal coordinates
/// (clamped back into the stroke box).
inline Configuration perturb(const DesignSpec& spec, const Configuration& q,
                             std::mt19937_64& rng, double pos, double ang) {
  Configuration p = q;
  p.base.position += pos * uniform(rng, 0.1, 1.0) * random_unit(rng);
  p.base.orientation =
      q.base.orientation * exp_so3(ang * uniform(rng, 0.1, 1.0) * random_unit(rng));
  for (int j = 0; j < 2; ++j) {
    const double mag = internal_layout(spec.variant).translational[j] ? pos : ang;
    p.internal[j] += uniform(rng, -mag, mag);
    p.internal[j] =
        std::clamp(p.internal[j], spec.stroke[j][0], spec.stroke[j][1]);
  }
  return p;
}

/// Largest coordinate discrepancy between two configurations: position (m),
/// base rotation (rad), internal coordinates (m or rad).
inline double recovery_error(const Configuration& a, const Configuration& b) {
  const double dp = (a.base.position - b.base.position).lpNorm<Eigen::Infinity>();
  const double dr =
      log_so3(a.base.orientation.conjugate() * b.base.orientation).norm();
  const double di = (a.internal - b.internal).lpNorm<Eigen::Infinity>();
  return std::max({dp, dr, di});
}

inline const std::array<Variant, 4>& all_variants() {
  static const std::array<Variant, 4> v = {Variant::Screw, Variant::Winder,
                                           Variant::Gripper,
                                           Variant::RotatableGripper};
  return v;
}

}  // namespace testutil
