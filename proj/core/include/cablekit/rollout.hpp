#pragma once

#include <vector>

#include "cablekit/dynamics.hpp"
#include "cablekit/trajectory.hpp"
#include "cablekit/workspace.hpp"

namespace cablekit {

/// One control-period log entry of a tracked trajectory.
struct RolloutTick {
  double time = 0.0;           // s, when the command was issued
  Configuration commanded;     // desired configuration at `time`
  Vec8 commanded_lengths = Vec8::Zero();  // cable commands from the desired q
  Vec8 realized_lengths = Vec8::Zero();   // actual lengths before the command
  Vec8 tensions = Vec8::Zero();           // elastic tensions at issue time
  double tracking_error = 0.0;            // m, base position error
  Verdict verdict = Verdict::Feasible;    // reversal > low > high > feasible
};

struct RolloutResult {
  std::vector<RolloutTick> ticks;
  SimState final_state;
  bool diverged = false;
  double max_tracking_error = 0.0;  // m
};

/// Tracks a trajectory with length-servoed cables: every control period the
/// desired configuration is converted to cable-length commands, and the full
/// elastic dynamics are integrated between command updates. The simulation
/// starts from the settled rest state under the initial command (a one-second
/// pre-roll). A winder command that lands on or
/// crosses a transmission reversal within the period is flagged Singular on
/// that tick; tension bound violations are flagged TensionLow / TensionHigh.
/// If the integrator diverges the log up to that point is returned with
/// `diverged` set instead of throwing.
RolloutResult kinematic_rollout(const Scenario& sc, const Trajectory& traj);

}  // namespace cablekit
