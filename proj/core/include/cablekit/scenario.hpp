#pragma once

#include <string>
#include <vector>

#include "cablekit/geometry.hpp"

namespace cablekit {

/// Numerical parameters for simulation and feasibility checks.
struct SimParams {
  double dt = 1e-3;                    // s, integrator step
  double control_period = 0.01;        // s, command update period
  double clearance = 0.01;             // m, minimum separation margin
  double cable_stiffness = 1e5;        // N/m, axial stiffness of one cable
  double cable_damping = 50.0;         // N s/m, axial damping of one cable
  double singularity_threshold = 1e6;  // condition-number cutoff
};

/// A complete, runnable description of one robot: cable frame, end-effector
/// design, and simulation parameters.
struct Scenario {
  std::string name;
  RobotGeometry geometry;
  DesignSpec design;
  SimParams sim;
};

/// Every rule the scenario violates, one human-readable message each:
/// design consistency, geometry against the design, and simulation
/// parameter ranges. Empty exactly when the scenario is valid.
std::vector<std::string> scenario_violations(const Scenario& sc);

/// Throws InvalidArgument with the first violation message, if any.
void validate_scenario(const Scenario& sc);

/// Built-in reference robot for each variant: a 2 m cube frame with four
/// ceiling and four floor anchors, a 0.15 m tie-off circle with small
/// alternating azimuth twists against the anchor diagonals, and catalogue
/// spring / transmission values. These are the models the test suite runs.
Scenario canonical_scenario(Variant v);

}  // namespace cablekit
