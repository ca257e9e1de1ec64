#include "cablekit/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace cablekit {

Trajectory plan_trajectory(const std::vector<Configuration>& waypoints,
                           const std::vector<double>& durations) {
  if (waypoints.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least two waypoints");
  if (durations.size() != waypoints.size() - 1)
    throw Error(ErrorCode::InvalidArgument,
                "need one duration per trajectory segment");
  for (const auto& w : waypoints) {
    if (!w.base.position.allFinite() ||
        !w.base.orientation.coeffs().allFinite() || !w.internal.allFinite())
      throw Error(ErrorCode::InvalidArgument, "non-finite waypoint");
    if (std::abs(w.base.orientation.norm() - 1.0) > 1e-6)
      throw Error(ErrorCode::InvalidArgument,
                  "waypoint orientation is not a unit quaternion");
  }
  Trajectory traj;
  traj.waypoints = waypoints;
  traj.durations = durations;
  traj.deltas.reserve(durations.size());
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (!(durations[i] > 0.0) || !std::isfinite(durations[i]))
      throw Error(ErrorCode::InvalidArgument,
                  "segment durations must be positive");
    traj.deltas.push_back(local_difference(waypoints[i], waypoints[i + 1]));
    traj.total_duration += durations[i];
  }
  return traj;
}

TrajectorySample sample_trajectory(const Trajectory& traj, double t) {
  if (traj.waypoints.size() < 2 ||
      traj.deltas.size() != traj.durations.size())
    throw Error(ErrorCode::InvalidArgument, "trajectory is not planned");
  TrajectorySample out;
  out.time = std::clamp(t, 0.0, traj.total_duration);

  std::size_t seg = 0;
  double local = out.time;
  while (seg + 1 < traj.durations.size() && local > traj.durations[seg]) {
    local -= traj.durations[seg];
    ++seg;
  }
  const double T = traj.durations[seg];
  const double u = std::clamp(local / T, 0.0, 1.0);

  // Minimum-jerk blend and its first two derivatives in u.
  const double s = ((6.0 * u - 15.0) * u + 10.0) * u * u * u;
  const double ds = ((30.0 * u - 60.0) * u + 30.0) * u * u;
  const double dds = ((120.0 * u - 180.0) * u + 60.0) * u;

  const Vec8& delta = traj.deltas[seg];
  out.q = retract(traj.waypoints[seg], s * delta);
  out.velocity = delta * (ds / T);
  out.acceleration = delta * (dds / (T * T));
  return out;
}

}  // namespace cablekit
