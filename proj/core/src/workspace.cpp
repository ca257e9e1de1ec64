#include "cablekit/workspace.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "cablekit/chain.hpp"

namespace cablekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Feasible:
      return "feasible";
    case Verdict::TensionLow:
      return "tension-low";
    case Verdict::TensionHigh:
      return "tension-high";
    case Verdict::Interference:
      return "interference";
    case Verdict::Singular:
      return "singular";
    case Verdict::OutOfStroke:
      return "out-of-stroke";
  }
  return "unknown";
}

double Axis::sample(int i) const {
  if (n <= 1) return 0.5 * (lo + hi);
  if (i == 0) return lo;      // exact bounds: downstream width/interval
  if (i == n - 1) return hi;  // arithmetic must not inherit grid rounding
  // Offsets are symmetric about the midpoint, so a centered axis yields
  // exact +/- coordinate pairs.
  const double mid = 0.5 * (lo + hi);
  const double h = (hi - lo) / (n - 1);
  return mid + (static_cast<double>(i) - 0.5 * (n - 1)) * h;
}

double Axis::step() const { return n <= 1 ? 0.0 : (hi - lo) / (n - 1); }

std::size_t WorkspaceGrid::cell_count() const {
  return static_cast<std::size_t>(x.n) * static_cast<std::size_t>(y.n) *
         static_cast<std::size_t>(z.n) * static_cast<std::size_t>(angles);
}

double WorkspaceGrid::yaw(int ia) const {
  if (angles <= 1) return 0.0;  // single slice: neutral yaw
  return -kPi + static_cast<double>(ia) * (2.0 * kPi / angles);
}

namespace {

/// Wrap an angle into [0, 2*pi).
double wrap_turn(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

}  // namespace

Configuration cell_configuration(const DesignSpec& spec, const Vec3& position,
                                 double payload_yaw) {
  Configuration q;
  q.base.position = position;
  q.base.orientation = Quat::Identity();
  switch (spec.variant) {
    case Variant::Screw:
    case Variant::Winder: {
      // Realize the yaw through the screw/winder travel with the bearing
      // parked at zero: the bearing can only balance a narrow band of angles
      // on its own, while one lead of travel reaches every angle. Fall back
      // to the bearing if the travel cannot wrap a full turn.
      const double s0 = spec.stroke[0][0];
      const double base = (spec.variant == Variant::Screw)
                              ? screw_angle(spec.lead, s0)
                              : winder_angle(spec.winder, s0);
      const double want = wrap_turn(-payload_yaw - base);  // extra twist needed
      double s_cand = -1.0;
      if (spec.variant == Variant::Screw) {
        s_cand = s0 + want * spec.lead / (2.0 * kPi);
      } else if (want <= spec.winder.theta_max) {
        // Invert the rising branch starting at s0.
        s_cand = s0 + want * spec.winder.stroke_period / spec.winder.theta_max;
      }
      if (s_cand >= spec.stroke[0][0] && s_cand <= spec.stroke[0][1]) {
        q.internal = Vec2(s_cand, 0.0);
      } else {
        q.internal = Vec2(s0, payload_yaw + base);
      }
      break;
    }
    case Variant::Gripper:
      // No screw: the bearing angle is the payload yaw.
      q.internal = Vec2(spec.stroke[0][0], payload_yaw);
      break;
    case Variant::RotatableGripper: {
      // Drive travel that realizes the yaw modulo one turn; the groove turns
      // the jaws by -2*pi*s2/lead.
      const double wrapped = wrap_turn(-payload_yaw);
      q.internal = Vec2(spec.stroke[0][0], wrapped * spec.lead / (2.0 * kPi));
      break;
    }
  }
  return q;
}

Verdict evaluate_configuration(const Scenario& sc, const Configuration& q) {
  const DesignSpec& spec = sc.design;
  if (!within_stroke(spec, q.internal, 1e-12)) return Verdict::OutOfStroke;
  try {
    const Mat8 J = jacobian(sc.geometry, spec, q, false);
    if (condition_number(J, sc.geometry.rod_radius, internal_layout(spec.variant)) >
        sc.sim.singularity_threshold)
      return Verdict::Singular;
    const Vec8 w = generalized_load(sc.geometry, spec, q, false);
    const TensionVerdict tv =
        solve_tensions(J, w, spec.tension_min, spec.tension_max);
    if (!tv.below_min.empty()) return Verdict::TensionLow;
    if (!tv.above_max.empty()) return Verdict::TensionHigh;
    if (!check_interference(sc.geometry, spec, q, sc.sim.clearance).clear)
      return Verdict::Interference;
    return Verdict::Feasible;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::Singular:
      case ErrorCode::NoConvergence:
        return Verdict::Singular;
      case ErrorCode::OutOfStroke:
      case ErrorCode::CoilBind:
        return Verdict::OutOfStroke;
      default:
        throw;
    }
  }
}

Verdict WorkspaceMap::at(int ix, int iy, int iz, int ia) const {
  const std::size_t idx =
      ((static_cast<std::size_t>(ix) * static_cast<std::size_t>(grid.y.n) +
        static_cast<std::size_t>(iy)) *
           static_cast<std::size_t>(grid.z.n) +
       static_cast<std::size_t>(iz)) *
          static_cast<std::size_t>(grid.angles) +
      static_cast<std::size_t>(ia);
  return verdicts[idx];
}

WorkspaceMap wrench_feasible_workspace(const Scenario& sc,
                                       const WorkspaceGrid& grid) {
  if (grid.x.n < 1 || grid.y.n < 1 || grid.z.n < 1 || grid.angles < 1)
    throw Error(ErrorCode::InvalidArgument, "grid resolutions must be >= 1");

  WorkspaceMap map;
  map.grid = grid;
  const std::size_t total = grid.cell_count();
  map.verdicts.assign(total, Verdict::OutOfStroke);

  const auto evaluate_flat = [&](std::size_t flat) {
    const int ia = static_cast<int>(flat % static_cast<std::size_t>(grid.angles));
    std::size_t rest = flat / static_cast<std::size_t>(grid.angles);
    const int iz = static_cast<int>(rest % static_cast<std::size_t>(grid.z.n));
    rest /= static_cast<std::size_t>(grid.z.n);
    const int iy = static_cast<int>(rest % static_cast<std::size_t>(grid.y.n));
    const int ix = static_cast<int>(rest / static_cast<std::size_t>(grid.y.n));
    const Vec3 p(grid.x.sample(ix), grid.y.sample(iy), grid.z.sample(iz));
    const Configuration q = cell_configuration(sc.design, p, grid.yaw(ia));
    map.verdicts[flat] = evaluate_configuration(sc, q);
  };

  // Cells are independent; evaluate in parallel chunks. Results land by
  // index, so the output is identical for any schedule.
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned nthreads =
      std::min<unsigned>(std::max(1u, hw), 16u);
  if (nthreads <= 1 || total < 512) {
    for (std::size_t i = 0; i < total; ++i) evaluate_flat(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t chunk = 128;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned tix = 0; tix < nthreads; ++tix) {
      pool.emplace_back([&]() {
        try {
          for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= total) return;
            const std::size_t end = std::min(begin + chunk, total);
            for (std::size_t i = begin; i < end; ++i) evaluate_flat(i);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  map.feasible_count = static_cast<std::size_t>(
      std::count(map.verdicts.begin(), map.verdicts.end(), Verdict::Feasible));
  return map;
}

RotationalWorkspace rotational_workspace(const Scenario& sc, const Vec3& position,
                                         int s_samples, int psi_samples) {
  if (s_samples < 2 || psi_samples < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least 2 sweep samples per axis");
  const DesignSpec& spec = sc.design;

  Configuration q0;
  q0.base.position = position;
  q0.base.orientation = Quat::Identity();
  q0.internal = Vec2(std::clamp(0.0, spec.stroke[0][0], spec.stroke[0][1]),
                     std::clamp(0.0, spec.stroke[1][0], spec.stroke[1][1]));
  if (evaluate_configuration(sc, q0) != Verdict::Feasible)
    throw Error(ErrorCode::Infeasible,
                "position is not statically feasible at rest internal coordinates");

  const Axis a0{spec.stroke[0][0], spec.stroke[0][1], s_samples};
  const Axis a1{spec.stroke[1][0], spec.stroke[1][1], psi_samples};
  const int n0 = s_samples, n1 = psi_samples;

  std::vector<char> feasible(static_cast<std::size_t>(n0 * n1), 0);
  std::vector<double> angle(static_cast<std::size_t>(n0 * n1), 0.0);
  Configuration q = q0;
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      q.internal = Vec2(a0.sample(i), a1.sample(j));
      const std::size_t idx = static_cast<std::size_t>(i * n1 + j);
      feasible[idx] = evaluate_configuration(sc, q) == Verdict::Feasible ? 1 : 0;
      angle[idx] = payload_angle(spec, q);
    }
  }

  // The reachable angle set is the image of the feasible region. Angles are
  // continuous over the stroke box, so each connected component of feasible
  // samples (4-adjacency) contributes one interval [min, max].
  RotationalWorkspace out;
  std::vector<char> seen(feasible.size(), 0);
  std::vector<int> stack;
  for (int start = 0; start < n0 * n1; ++start) {
    const auto sidx = static_cast<std::size_t>(start);
    if (!feasible[sidx] || seen[sidx]) continue;
    double amin = angle[sidx], amax = angle[sidx];
    stack.assign(1, start);
    seen[sidx] = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int ci = cur / n1, cj = cur % n1;
      amin = std::min(amin, angle[static_cast<std::size_t>(cur)]);
      amax = std::max(amax, angle[static_cast<std::size_t>(cur)]);
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = ci + di[d], nj = cj + dj[d];
        if (ni < 0 || ni >= n0 || nj < 0 || nj >= n1) continue;
        const int nxt = ni * n1 + nj;
        const auto nidx = static_cast<std::size_t>(nxt);
        if (feasible[nidx] && !seen[nidx]) {
          seen[nidx] = 1;
          stack.push_back(nxt);
        }
      }
    }
    out.intervals.push_back({amin, amax});
  }

  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const std::array<double, 2>& p, const std::array<double, 2>& r) {
              return p[0] < r[0];
            });
  std::vector<std::array<double, 2>> merged;
  for (const auto& iv : out.intervals) {
    if (!merged.empty() && iv[0] <= merged.back()[1]) {
      merged.back()[1] = std::max(merged.back()[1], iv[1]);
    } else {
      merged.push_back(iv);
    }
  }
  out.intervals = std::move(merged);
  for (const auto& iv : out.intervals) out.width += iv[1] - iv[0];

  if (spec.variant == Variant::Winder) {
    const double period = 2.0 * spec.winder.stroke_period;
    if (spec.stroke[0][1] - spec.stroke[0][0] + 1e-12 >= period) {
      for (int j = 0; j < n1 && !out.continuous_rotation; ++j) {
        bool full = true;
        for (int i = 0; i < n0 && full; ++i)
          full = feasible[static_cast<std::size_t>(i * n1 + j)] != 0;
        out.continuous_rotation = full;
      }
    }
  }
  return out;
}

}  // namespace cablekit
