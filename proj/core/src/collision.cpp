#include "cablekit/collision.hpp"

#include <algorithm>
#include <cmath>

#include "cablekit/chain.hpp"

namespace cablekit {

double segment_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                                const Vec3& b1) {
  // Closest points of two segments via the standard clamped quadratic
  // minimization over the parameter square.
  const Vec3 d1 = a1 - a0;
  const Vec3 d2 = b1 - b0;
  const Vec3 r = a0 - b0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);

  double s = 0.0, t = 0.0;
  constexpr double kEps = 1e-30;
  if (a <= kEps && e <= kEps) {
    return (a0 - b0).norm();
  }
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom > kEps)
        s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((a0 + s * d1) - (b0 + t * d2)).norm();
}

namespace {

double point_box_distance(const Vec3& p, const Vec3& half) {
  const Vec3 excess = (p.cwiseAbs() - half).cwiseMax(0.0);
  return excess.norm();
}

}  // namespace

double segment_box_distance(const Vec3& p0, const Vec3& p1, const Pose& box_pose,
                            const Vec3& half_extents) {
  // Work in the box frame, where the box is an AABB. Point-to-AABB distance
  // is convex, so its restriction to the segment is unimodal and golden
  // section converges to the global minimum.
  const Mat3 Rt = box_pose.orientation.toRotationMatrix().transpose();
  const Vec3 q0 = Rt * (p0 - box_pose.position);
  const Vec3 q1 = Rt * (p1 - box_pose.position);

  const auto dist = [&](double t) {
    return point_box_distance(q0 + t * (q1 - q0), half_extents);
  };

  const double inv_phi = 0.6180339887498948482;
  double lo = 0.0, hi = 1.0;
  double m1 = hi - inv_phi * (hi - lo);
  double m2 = lo + inv_phi * (hi - lo);
  double f1 = dist(m1), f2 = dist(m2);
  for (int i = 0; i < 90 && hi - lo > 1e-15; ++i) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - inv_phi * (hi - lo);
      f1 = dist(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + inv_phi * (hi - lo);
      f2 = dist(m2);
    }
  }
  return std::min({dist(lo), f1, f2, dist(hi)});
}

InterferenceReport check_interference(const RobotGeometry& geom,
                                      const DesignSpec& spec,
                                      const Configuration& q, double clearance) {
  const std::array<Vec3, kNumCables> tips = attachment_points_raw(geom, spec, q);

  InterferenceReport report;
  for (int i = 0; i < kNumCables; ++i) {
    for (int j = i + 1; j < kNumCables; ++j) {
      InterferenceEntry e;
      e.kind = PairKind::CableCable;
      e.cable = i;
      e.other_cable = j;
      e.distance = segment_segment_distance(
          geom.anchors[static_cast<std::size_t>(i)], tips[static_cast<std::size_t>(i)],
          geom.anchors[static_cast<std::size_t>(j)], tips[static_cast<std::size_t>(j)]);
      e.flagged = e.distance < clearance;
      report.entries.push_back(e);
    }
  }
  for (BodyId b : bodies_of(spec.variant)) {
    const auto shape = geom.shapes.find(b);
    if (shape == geom.shapes.end()) continue;
    const Pose pose = body_pose_raw(geom, spec, q, b);
    for (int i = 0; i < kNumCables; ++i) {
      InterferenceEntry e;
      e.kind = PairKind::CableBody;
      e.cable = i;
      e.body = b;
      e.distance = segment_box_distance(geom.anchors[static_cast<std::size_t>(i)],
                                        tips[static_cast<std::size_t>(i)], pose,
                                        shape->second.half_extents);
      e.flagged = e.distance < clearance;
      report.entries.push_back(e);
    }
  }

  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const InterferenceEntry& x, const InterferenceEntry& y) {
                     return x.distance < y.distance;
                   });
  report.min_distance =
      report.entries.empty() ? 0.0 : report.entries.front().distance;
  report.clear = std::none_of(report.entries.begin(), report.entries.end(),
                              [](const InterferenceEntry& e) { return e.flagged; });
  return report;
}

}  // namespace cablekit
