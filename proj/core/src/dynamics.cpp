#include "cablekit/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cablekit/chain.hpp"
#include "cablekit/kinematics.hpp"
#include "cablekit/statics.hpp"

namespace cablekit {

namespace {

const MassProps& props_of(const DesignSpec& spec, BodyId b) {
  const auto it = spec.bodies.find(b);
  if (it == spec.bodies.end())
    throw Error(ErrorCode::InvalidArgument,
                std::string("no mass properties for body '") + body_name(b) + "'");
  return it->second;
}

Mat3 world_inertia(const RobotGeometry& geom, const DesignSpec& spec,
                   const Configuration& q, BodyId b, const Vec3& inertia) {
  const Mat3 R = body_pose_raw(geom, spec, q, b).orientation.toRotationMatrix();
  return R * inertia.asDiagonal() * R.transpose();
}

}  // namespace

Mat8 mass_matrix(const RobotGeometry& geom, const DesignSpec& spec,
                 const Configuration& q) {
  Mat8 M = Mat8::Zero();
  for (BodyId b : bodies_of(spec.variant)) {
    const MassProps& mp = props_of(spec, b);
    const Mat38 Jv = origin_jacobian(geom, spec, q, b);
    const Mat38 Jw = angular_jacobian(geom, spec, q, b);
    M += mp.mass * Jv.transpose() * Jv +
         Jw.transpose() * world_inertia(geom, spec, q, b, mp.inertia) * Jw;
  }
  return 0.5 * (M + M.transpose());
}

Vec8 bias_forces(const RobotGeometry& geom, const DesignSpec& spec,
                 const Configuration& q, const Vec8& v) {
  const double vn = v.norm();
  if (vn == 0.0) return Vec8::Zero();
  const double h = 1e-7 / std::max(1.0, vn);
  const Configuration qe = retract(q, h * v);

  Vec8 bias = Vec8::Zero();
  for (BodyId b : bodies_of(spec.variant)) {
    const MassProps& mp = props_of(spec, b);
    const Mat38 Jv = origin_jacobian(geom, spec, q, b);
    const Mat38 Jw = angular_jacobian(geom, spec, q, b);
    const Vec3 dJv_v = ((origin_jacobian(geom, spec, qe, b) - Jv) / h) * v;
    const Vec3 dJw_v = ((angular_jacobian(geom, spec, qe, b) - Jw) / h) * v;
    const Mat3 Iw = world_inertia(geom, spec, q, b, mp.inertia);
    const Vec3 omega = Jw * v;
    bias += Jv.transpose() * (mp.mass * dJv_v) +
            Jw.transpose() * (Iw * dJw_v + omega.cross(Iw * omega));
  }
  return bias;
}

Vec8 cable_tensions(const RobotGeometry& geom, const DesignSpec& spec,
                    const SimParams& sim, const Configuration& q, const Vec8& v,
                    const Vec8& l_cmd) {
  const CableVectors cv = cable_vectors(geom, spec, q, /*check_stroke=*/false);
  const Mat8 J = jacobian(geom, spec, q, /*check_stroke=*/false);
  const Vec8 rate = J * v;
  Vec8 t = Vec8::Zero();
  for (int i = 0; i < kNumCables; ++i) {
    const double elastic = sim.cable_stiffness * (cv.lengths[i] - l_cmd[i]);
    if (elastic <= 0.0) continue;  // slack
    t[i] = std::max(0.0, elastic + sim.cable_damping * rate[i]);
  }
  return t;
}

Vec8 forward_acceleration(const Scenario& sc, const SimState& state,
                          const Vec8& l_cmd, const Vec8& extra) {
  const RobotGeometry& geom = sc.geometry;
  const DesignSpec& spec = sc.design;
  const Mat8 M = mass_matrix(geom, spec, state.q);
  const Vec8 w = generalized_load(geom, spec, state.q, /*check_stroke=*/false);
  const Vec8 t = cable_tensions(geom, spec, sc.sim, state.q, state.v, l_cmd);
  const Mat8 J = jacobian(geom, spec, state.q, /*check_stroke=*/false);
  const Vec8 rhs = w - J.transpose() * t + extra -
                   bias_forces(geom, spec, state.q, state.v);
  return M.ldlt().solve(rhs);
}

SimState step_dynamics(const Scenario& sc, const SimState& state,
                       const Vec8& l_cmd, const Vec8& extra) {
  const double dt = sc.sim.dt;
  SimState next;
  next.v = state.v + dt * forward_acceleration(sc, state, l_cmd, extra);
  next.q = retract(state.q, dt * next.v);
  renormalize(next.q.base.orientation);
  next.t = state.t + dt;

  const InternalLayout layout = internal_layout(sc.design.variant);
  for (int j = 0; j < 2; ++j) {
    if (!layout.translational[j]) continue;  // free yaw, no stop
    const double lo = sc.design.stroke[j][0];
    const double hi = sc.design.stroke[j][1];
    if (next.q.internal[j] < lo) {
      next.q.internal[j] = lo;
      next.v[6 + j] = std::max(0.0, next.v[6 + j]);
    } else if (next.q.internal[j] > hi) {
      next.q.internal[j] = hi;
      next.v[6 + j] = std::min(0.0, next.v[6 + j]);
    }
  }

  if (!next.q.base.position.allFinite() ||
      !next.q.base.orientation.coeffs().allFinite() ||
      !next.q.internal.allFinite() || !next.v.allFinite())
    throw Error(ErrorCode::NoConvergence, "simulation diverged");
  return next;
}

double mechanical_energy(const Scenario& sc, const SimState& state,
                         const Vec8& l_cmd) {
  const RobotGeometry& geom = sc.geometry;
  const DesignSpec& spec = sc.design;
  double e = 0.5 * state.v.dot(mass_matrix(geom, spec, state.q) * state.v);
  for (BodyId b : bodies_of(spec.variant)) {
    const MassProps& mp = props_of(spec, b);
    const Pose p = body_pose_raw(geom, spec, state.q, b);
    e -= mp.mass * spec.gravity.dot(p.position);
  }
  for (const auto& [coord, sp] : spec.springs) {
    const double x = spring_extension(sp, state.q.internal[coord]);
    e += 0.5 * sp.stiffness * (x - sp.free_extension) * (x - sp.free_extension);
  }
  const CableVectors cv = cable_vectors(geom, spec, state.q, /*check_stroke=*/false);
  for (int i = 0; i < kNumCables; ++i) {
    const double stretch = std::max(0.0, cv.lengths[i] - l_cmd[i]);
    e += 0.5 * sc.sim.cable_stiffness * stretch * stretch;
  }
  return e;
}

}  // namespace cablekit
