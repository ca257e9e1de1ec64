#pragma once

#include <string>

#include "cablekit/scenario.hpp"
#include "cablekit/trajectory.hpp"

namespace cablekit {

/// Parses a scenario from JSON text. The schema is strict: a missing
/// required field, a wrong type, or an unknown key raises a Schema error
/// whose message carries the field pointer (e.g. "$.design.lead"). Parsing
/// checks structure only; semantic rules live in scenario_violations().
Scenario parse_scenario(const std::string& text);

/// Canonical JSON text for a scenario: fixed key order, two-space indent,
/// round-trip-exact numbers.
std::string format_scenario(const Scenario& sc);

/// File wrappers around parse/format. Unreadable or unwritable paths raise
/// Io errors.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

/// Parses a motion plan: {"waypoints": [{"position": [x,y,z],
/// "yaw": r | "orientation": [w,x,y,z], "internal": [a,b]}, ...],
/// "durations": [s, ...]}. yaw/orientation and internal are optional and
/// default to identity / zero.
Trajectory parse_plan(const std::string& text);
Trajectory load_plan(const std::string& path);

}  // namespace cablekit
