#pragma once

#include <functional>
#include <vector>

#include "cablekit/workspace.hpp"

namespace cablekit {

/// Derivative-free maximization over a box: a coarse Cartesian grid spends
/// ~60% of the budget, then coordinate-wise golden-section refinement around
/// the incumbent spends the rest. Deterministic for fixed inputs. Objectives
/// may return -infinity for infeasible candidates.
struct SearchTracePoint {
  std::vector<double> params;
  double value = 0.0;
};

struct SearchResult {
  std::vector<double> best;
  double value = 0.0;
  int evaluations = 0;
  std::vector<SearchTracePoint> trace;
};

SearchResult grid_golden_search(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<std::array<double, 2>>& bounds, int budget);

enum class FreeParam { SpringStiffness, SpringFreeExtension, Lead };
enum class Objective { RotationalStroke, WorkspaceVolume };

const char* free_param_name(FreeParam p);
const char* objective_name(Objective o);
FreeParam free_param_from_name(const std::string& s);
Objective objective_from_name(const std::string& s);

struct OptimizeOptions {
  std::vector<FreeParam> params;
  std::vector<std::array<double, 2>> bounds;  // one [lo,hi] per free param
  Objective objective = Objective::RotationalStroke;
  int budget = 60;             // total objective evaluations
  Vec3 position{0.0, 0.0, 1.0};  // where rotational stroke is measured
  WorkspaceGrid grid{{-0.6, 0.6, 7}, {-0.6, 0.6, 7}, {0.5, 1.5, 5}, 4};
};

struct OptimizeResult {
  enum class Status { Ok, AllInfeasible };
  Status status = Status::AllInfeasible;
  std::vector<double> best_params;
  double best_objective = 0.0;
  std::vector<SearchTracePoint> trace;
  int evaluations = 0;
};

/// Tunes the chosen design parameters of a scenario. rotational-stroke is
/// the reachable payload-yaw width at `position`; workspace-volume is the
/// feasible cell count times cell volume on `grid`. Candidates that fail
/// validation or have no feasible sample score -infinity; if every candidate
/// does, the result is AllInfeasible.
OptimizeResult optimize_parameters(const Scenario& base,
                                   const OptimizeOptions& options);

}  // namespace cablekit
