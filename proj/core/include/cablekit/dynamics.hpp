#pragma once

#include "cablekit/scenario.hpp"

namespace cablekit {

/// Instantaneous simulation state: configuration, tangent-space velocity
/// [dp_world, omega-ish body rate, internal rates], and simulated time.
struct SimState {
  Configuration q;
  Vec8 v = Vec8::Zero();
  double t = 0.0;  // s
};

/// Configuration-space inertia, summed over the chain bodies:
///   M = sum_b  m_b Jv_b^T Jv_b  +  Jw_b^T (R_b I_b R_b^T) Jw_b.
/// Symmetric; positive definite whenever the chain carries mass on every
/// coordinate.
Mat8 mass_matrix(const RobotGeometry& geom, const DesignSpec& spec,
                 const Configuration& q);

/// Velocity-product generalized force (Coriolis, centrifugal, gyroscopic),
/// computed from a directional finite difference of the body Jacobians along
/// v. Exactly zero at v = 0.
Vec8 bias_forces(const RobotGeometry& geom, const DesignSpec& spec,
                 const Configuration& q, const Vec8& v);

/// Elastic cable tensions under commanded free lengths l_cmd. A cable is a
/// unilateral spring-damper: slack (elastic part non-positive) carries
/// nothing, and damping never turns a taut cable into a pusher.
Vec8 cable_tensions(const RobotGeometry& geom, const DesignSpec& spec,
                    const SimParams& sim, const Configuration& q, const Vec8& v,
                    const Vec8& l_cmd);

/// Generalized acceleration from the equations of motion under gravity,
/// springs, elastic cables, and an optional extra generalized force.
Vec8 forward_acceleration(const Scenario& sc, const SimState& state,
                          const Vec8& l_cmd, const Vec8& extra = Vec8::Zero());

/// One semi-implicit Euler step of size sc.sim.dt. Translational internal
/// coordinates hit hard stops at their stroke bounds: the coordinate is
/// clamped and its rate component zeroed (inelastic). A rotational internal
/// coordinate is a free yaw and is never clamped. Throws NoConvergence when
/// the state stops being finite.
SimState step_dynamics(const Scenario& sc, const SimState& state,
                       const Vec8& l_cmd, const Vec8& extra = Vec8::Zero());

/// Kinetic + gravitational + spring + taut-cable elastic energy. A useful
/// monitor: with damped cables and no external input it should not grow.
double mechanical_energy(const Scenario& sc, const SimState& state,
                         const Vec8& l_cmd);

}  // namespace cablekit
