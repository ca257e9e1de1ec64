#include "cablekit/rollout.hpp"

#include <algorithm>
#include <cmath>

#include "cablekit/kinematics.hpp"

namespace cablekit {

namespace {

// True when the closed interval [a, b] of winder travel touches a
// transmission reversal (an integer multiple of the stroke period).
bool crosses_reversal(const WinderParams& w, double a, double b, double margin) {
  if (winder_reversal_distance(w, b) <= margin) return true;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double k_lo = std::ceil(lo / w.stroke_period - 1e-12);
  const double k_hi = std::floor(hi / w.stroke_period + 1e-12);
  return k_lo <= k_hi;
}

}  // namespace

RolloutResult kinematic_rollout(const Scenario& sc, const Trajectory& traj) {
  validate_scenario(sc);
  if (traj.waypoints.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "trajectory is not planned");

  const double cp = sc.sim.control_period;
  const int substeps = std::max(1, static_cast<int>(std::llround(cp / sc.sim.dt)));

  RolloutResult out;
  SimState state;
  state.q = traj.waypoints.front();
  double prev_s = state.q.internal[0];

  // Pre-roll: settle into the cables under the initial command so tracking
  // starts from the physical rest state, not from eight slack cables.
  try {
    const Vec8 l0 = inverse_kinematics(sc.geometry, sc.design, state.q);
    const int settle_steps =
        static_cast<int>(std::llround(1.0 / sc.sim.dt));
    for (int i = 0; i < settle_steps; ++i) state = step_dynamics(sc, state, l0);
    state.t = 0.0;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoConvergence) throw;
    out.diverged = true;
    out.final_state = state;
    return out;
  }

  for (int k = 0;; ++k) {
    double tk = k * cp;
    const bool last = tk >= traj.total_duration - 1e-12;
    if (last) tk = traj.total_duration;

    RolloutTick tick;
    tick.time = tk;
    tick.commanded = sample_trajectory(traj, tk).q;
    tick.commanded_lengths =
        inverse_kinematics(sc.geometry, sc.design, tick.commanded);
    tick.realized_lengths =
        cable_vectors(sc.geometry, sc.design, state.q, /*check_stroke=*/false)
            .lengths;
    tick.tensions = cable_tensions(sc.geometry, sc.design, sc.sim, state.q,
                                   state.v, tick.commanded_lengths);
    tick.tracking_error =
        (state.q.base.position - tick.commanded.base.position).norm();

    if (sc.design.variant == Variant::Winder &&
        crosses_reversal(sc.design.winder, prev_s, tick.commanded.internal[0],
                         1e-6)) {
      tick.verdict = Verdict::Singular;
    } else if ((tick.tensions.array() < sc.design.tension_min).any()) {
      tick.verdict = Verdict::TensionLow;
    } else if ((tick.tensions.array() > sc.design.tension_max).any()) {
      tick.verdict = Verdict::TensionHigh;
    }
    prev_s = tick.commanded.internal[0];

    out.max_tracking_error = std::max(out.max_tracking_error, tick.tracking_error);
    out.ticks.push_back(std::move(tick));
    if (last) break;

    try {
      for (int i = 0; i < substeps; ++i)
        state = step_dynamics(sc, state, out.ticks.back().commanded_lengths);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoConvergence) throw;
      out.diverged = true;
      break;
    }
  }
  out.final_state = state;
  return out;
}

}  // namespace cablekit
