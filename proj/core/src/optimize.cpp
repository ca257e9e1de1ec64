#include "cablekit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace cablekit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498948482;

}  // namespace

SearchResult grid_golden_search(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<std::array<double, 2>>& bounds, int budget) {
  const std::size_t d = bounds.size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "no search dimensions");
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  for (const auto& b : bounds)
    if (!(b[0] <= b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
      throw Error(ErrorCode::InvalidArgument, "invalid search bounds");

  SearchResult res;
  const auto eval = [&](const std::vector<double>& p) {
    const double v = objective(p);
    ++res.evaluations;
    res.trace.push_back({p, v});
    if (res.best.empty() || v > res.value) {
      res.best = p;
      res.value = v;
    }
    return v;
  };

  std::size_t d_eff = 0;
  for (const auto& b : bounds)
    if (b[1] > b[0]) ++d_eff;

  // Coarse pass: inclusive Cartesian grid sized to ~60% of the budget.
  int g = 1;
  if (d_eff > 0) {
    const double target = std::max(1.0, 0.6 * budget);
    g = static_cast<int>(std::floor(std::pow(target, 1.0 / static_cast<double>(d_eff))));
    g = std::max(1, g);
  }
  std::vector<int> counts(d, 1);
  for (std::size_t i = 0; i < d; ++i)
    if (bounds[i][1] > bounds[i][0]) counts[static_cast<std::size_t>(i)] = std::max(2, g);

  const auto coord = [&](std::size_t dim, int k) {
    const int n = counts[dim];
    if (n <= 1) return 0.5 * (bounds[dim][0] + bounds[dim][1]);
    return bounds[dim][0] + (bounds[dim][1] - bounds[dim][0]) * k / (n - 1);
  };

  std::vector<int> idx(d, 0);
  std::vector<double> p(d);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) p[i] = coord(i, idx[i]);
    if (res.evaluations >= budget) break;
    eval(p);
    std::size_t carry = d;
    while (carry > 0) {
      --carry;
      if (++idx[carry] < counts[carry]) break;
      idx[carry] = 0;
      if (carry == 0) {
        carry = d + 1;  // full wrap: done
        break;
      }
    }
    if (carry == d + 1) break;
  }

  // Refinement: coordinate-wise golden section around the incumbent, one
  // coarse cell wide, until the budget runs out or a full cycle stalls.
  std::vector<double> window(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double range = bounds[i][1] - bounds[i][0];
    window[i] = counts[i] > 1 ? range / (counts[i] - 1) : 0.0;
  }

  while (res.evaluations < budget) {
    const double before = res.value;
    for (std::size_t dim = 0; dim < d && res.evaluations < budget; ++dim) {
      if (window[dim] <= 0.0) continue;
      double lo = std::max(bounds[dim][0], res.best[dim] - window[dim]);
      double hi = std::min(bounds[dim][1], res.best[dim] + window[dim]);
      if (hi - lo < 1e-12) continue;
      std::vector<double> probe = res.best;
      double m1 = hi - kInvPhi * (hi - lo);
      double m2 = lo + kInvPhi * (hi - lo);
      probe[dim] = m1;
      double f1 = eval(probe);
      if (res.evaluations >= budget) break;
      probe[dim] = m2;
      double f2 = eval(probe);
      for (int it = 0; it < 16 && res.evaluations < budget && hi - lo > 1e-10;
           ++it) {
        if (f1 >= f2) {
          hi = m2;
          m2 = m1;
          f2 = f1;
          m1 = hi - kInvPhi * (hi - lo);
          probe[dim] = m1;
          f1 = eval(probe);
        } else {
          lo = m1;
          m1 = m2;
          f1 = f2;
          m2 = lo + kInvPhi * (hi - lo);
          probe[dim] = m2;
          f2 = eval(probe);
        }
      }
      window[dim] *= 0.5;
    }
    if (!(res.value > before) &&
        *std::max_element(window.begin(), window.end()) < 1e-9)
      break;
  }
  return res;
}

const char* free_param_name(FreeParam p) {
  switch (p) {
    case FreeParam::SpringStiffness:
      return "spring-stiffness";
    case FreeParam::SpringFreeExtension:
      return "spring-free-extension";
    case FreeParam::Lead:
      return "lead";
  }
  return "unknown";
}

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::RotationalStroke:
      return "rotational-stroke";
    case Objective::WorkspaceVolume:
      return "workspace-volume";
  }
  return "unknown";
}

FreeParam free_param_from_name(const std::string& s) {
  if (s == "spring-stiffness") return FreeParam::SpringStiffness;
  if (s == "spring-free-extension") return FreeParam::SpringFreeExtension;
  if (s == "lead") return FreeParam::Lead;
  throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + s + "'");
}

Objective objective_from_name(const std::string& s) {
  if (s == "rotational-stroke") return Objective::RotationalStroke;
  if (s == "workspace-volume") return Objective::WorkspaceVolume;
  throw Error(ErrorCode::InvalidArgument, "unknown objective '" + s + "'");
}

OptimizeResult optimize_parameters(const Scenario& base,
                                   const OptimizeOptions& options) {
  if (options.params.empty())
    throw Error(ErrorCode::InvalidArgument, "no parameters to optimize");
  if (options.params.size() != options.bounds.size())
    throw Error(ErrorCode::InvalidArgument,
                "parameter and bound counts do not match");
  for (std::size_t i = 0; i < options.params.size(); ++i)
    for (std::size_t j = i + 1; j < options.params.size(); ++j)
      if (options.params[i] == options.params[j])
        throw Error(ErrorCode::InvalidArgument, "duplicate free parameter");

  const auto apply = [&](const std::vector<double>& p) {
    Scenario sc = base;
    for (std::size_t i = 0; i < options.params.size(); ++i) {
      switch (options.params[i]) {
        case FreeParam::SpringStiffness: {
          auto it = sc.design.springs.find(0);
          if (it == sc.design.springs.end()) return std::optional<Scenario>{};
          it->second.stiffness = p[i];
          break;
        }
        case FreeParam::SpringFreeExtension: {
          auto it = sc.design.springs.find(0);
          if (it == sc.design.springs.end()) return std::optional<Scenario>{};
          it->second.free_extension = p[i];
          break;
        }
        case FreeParam::Lead:
          sc.design.lead = p[i];
          break;
      }
    }
    if (!scenario_violations(sc).empty()) return std::optional<Scenario>{};
    return std::optional<Scenario>{std::move(sc)};
  };

  const double cell_volume = [&] {
    const auto measure = [](const Axis& a) {
      return a.n > 1 ? a.step() : 1.0;
    };
    return measure(options.grid.x) * measure(options.grid.y) *
           measure(options.grid.z);
  }();

  const auto score = [&](const std::vector<double>& p) -> double {
    const std::optional<Scenario> sc = apply(p);
    if (!sc) return kNegInf;
    try {
      switch (options.objective) {
        case Objective::RotationalStroke:
          return rotational_workspace(*sc, options.position, 41, 17).width;
        case Objective::WorkspaceVolume:
          return static_cast<double>(
                     wrench_feasible_workspace(*sc, options.grid).feasible_count) *
                 cell_volume;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Infeasible || e.code() == ErrorCode::Singular ||
          e.code() == ErrorCode::CoilBind)
        return kNegInf;
      throw;
    }
    return kNegInf;
  };

  const SearchResult sr = grid_golden_search(score, options.bounds, options.budget);

  OptimizeResult out;
  out.trace = sr.trace;
  out.evaluations = sr.evaluations;
  if (std::isfinite(sr.value)) {
    out.status = OptimizeResult::Status::Ok;
    out.best_params = sr.best;
    out.best_objective = sr.value;
  } else {
    out.status = OptimizeResult::Status::AllInfeasible;
  }
  return out;
}

}  // namespace cablekit
