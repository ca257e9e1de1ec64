#pragma once

#include <vector>

#include "cablekit/scenario.hpp"

namespace cablekit {

/// Exact minimum distance between segments [a0,a1] and [b0,b1].
double segment_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                                const Vec3& b1);

/// Minimum distance between segment [p0,p1] and an oriented box (axis-aligned
/// in its own frame) with the given half extents. Zero when they intersect.
double segment_box_distance(const Vec3& p0, const Vec3& p1, const Pose& box_pose,
                            const Vec3& half_extents);

enum class PairKind { CableCable, CableBody };

struct InterferenceEntry {
  PairKind kind = PairKind::CableCable;
  int cable = 0;             // first cable index
  int other_cable = -1;      // second cable index (cable-cable)
  BodyId body = BodyId::Lower;  // body (cable-body)
  double distance = 0.0;
  bool flagged = false;      // distance below the clearance margin
};

struct InterferenceReport {
  std::vector<InterferenceEntry> entries;  // sorted by distance ascending
  double min_distance = 0.0;
  bool clear = true;  // no entry flagged
};

/// Distances between every cable pair and between every cable and every body
/// box at configuration q; entries below `clearance` are flagged. Cables are
/// straight segments from anchor to attachment point.
InterferenceReport check_interference(const RobotGeometry& geom,
                                      const DesignSpec& spec,
                                      const Configuration& q, double clearance);

}  // namespace cablekit
