#pragma once

#include <array>
#include <vector>

#include "cablekit/collision.hpp"
#include "cablekit/statics.hpp"

namespace cablekit {

/// Cell verdicts, in the fixed order the checks run:
/// stroke -> kinematics -> singularity -> tensions -> interference.
/// A cell records only the first failing reason.
enum class Verdict : int {
  Feasible = 0,
  TensionLow = 1,
  TensionHigh = 2,
  Interference = 3,
  Singular = 4,
  OutOfStroke = 5,
};

const char* verdict_name(Verdict v);

/// One sampled axis: n samples from lo to hi inclusive (n == 1 samples the
/// midpoint). Samples are generated symmetrically about the midpoint so a
/// centered axis produces exact +/- pairs.
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;
  double sample(int i) const;
  double step() const;  // 0 when n == 1
};

/// Position grid times one payload-yaw axis. Payload yaw is realized per
/// variant with the base orientation held at identity: the free bearing
/// angle where one exists (carrier travel zero), or the drive travel that
/// yields the requested yaw modulo one turn for the rotatable gripper.
struct WorkspaceGrid {
  Axis x{-0.6, 0.6, 21};
  Axis y{-0.6, 0.6, 21};
  Axis z{0.5, 1.5, 11};
  int angles = 8;  // payload yaw samples, spanning [-pi, pi)

  std::size_t cell_count() const;
  double yaw(int ia) const;
};

/// Configuration a grid cell evaluates: identity base orientation at the
/// given position, internals chosen to realize the requested payload yaw.
Configuration cell_configuration(const DesignSpec& spec, const Vec3& position,
                                 double payload_yaw);

/// Feasibility verdict of one configuration under the scenario's static
/// load, bounds, and clearance, with the fixed check order above.
Verdict evaluate_configuration(const Scenario& sc, const Configuration& q);

struct WorkspaceMap {
  WorkspaceGrid grid;
  // Verdicts in row-major order: index = ((ix*ny + iy)*nz + iz)*na + ia.
  std::vector<Verdict> verdicts;
  std::size_t feasible_count = 0;

  Verdict at(int ix, int iy, int iz, int ia) const;
};

/// Evaluates every grid cell. Cells are independent; evaluation may be
/// parallelized internally but the output ordering is canonical.
WorkspaceMap wrench_feasible_workspace(const Scenario& sc,
                                       const WorkspaceGrid& grid);

/// Reachable payload yaw set at a fixed position (identity base
/// orientation), swept over the full internal stroke box. Angles are
/// unwrapped: four feasible turns of the screw report a width of 8*pi.
struct RotationalWorkspace {
  std::vector<std::array<double, 2>> intervals;  // merged, ascending
  double width = 0.0;                            // total measure
  bool continuous_rotation = false;  // winder: a full groove period is
                                     // traversable without leaving feasibility
};

/// Throws Infeasible when the position fails feasibility at zero internal
/// coordinates.
RotationalWorkspace rotational_workspace(const Scenario& sc, const Vec3& position,
                                         int s_samples = 81, int psi_samples = 33);

}  // namespace cablekit
