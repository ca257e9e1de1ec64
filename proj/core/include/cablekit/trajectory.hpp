#pragma once

#include <vector>

#include "cablekit/types.hpp"

namespace cablekit {

/// Piecewise-quintic interpolation between configuration waypoints. Each
/// segment follows the minimum-jerk profile 6u^5 - 15u^4 + 10u^3 along the
/// tangent-space difference of its endpoints, so velocity and acceleration
/// vanish at every waypoint.
struct Trajectory {
  std::vector<Configuration> waypoints;
  std::vector<double> durations;  // seconds, one per segment
  std::vector<Vec8> deltas;       // cached local_difference per segment
  double total_duration = 0.0;
};

/// Requires at least two waypoints, one positive finite duration per
/// segment, and finite waypoint coordinates.
Trajectory plan_trajectory(const std::vector<Configuration>& waypoints,
                           const std::vector<double>& durations);

struct TrajectorySample {
  Configuration q;
  Vec8 velocity = Vec8::Zero();      // tangent-space rate
  Vec8 acceleration = Vec8::Zero();  // tangent-space rate of rate
  double time = 0.0;
};

/// Evaluates the trajectory; t is clamped to [0, total_duration].
TrajectorySample sample_trajectory(const Trajectory& traj, double t);

}  // namespace cablekit
