// cablekit: command-line front end for the cable robot toolkit.
//
// Every subcommand prints a JSON summary to stdout; bulk results (grids,
// trajectories, traces) go to a CSV file via --out. Exit codes: 0 success,
// 1 invalid input (bad arguments, schema, unreadable files, stroke limits),
// 2 numerical failure (singular, no convergence, infeasible, coil bind),
// 64 usage errors.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "cablekit/chain.hpp"
#include "cablekit/collision.hpp"
#include "cablekit/dynamics.hpp"
#include "cablekit/kinematics.hpp"
#include "cablekit/optimize.hpp"
#include "cablekit/rollout.hpp"
#include "cablekit/scenario_io.hpp"
#include "cablekit/statics.hpp"
#include "cablekit/trajectory.hpp"
#include "cablekit/workspace.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cablekit;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfStroke:
    case ErrorCode::Schema:
    case ErrorCode::Io:
      return 1;
    default:
      return 2;
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Minimal CSV sink with deterministic number formatting.
class Csv {
 public:
  explicit Csv(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    path_ = path;
  }
  Csv& field(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  Csv& field(double v) { return field(num(v)); }
  Csv& field(int v) { return field(std::to_string(v)); }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  void finish() {
    out_.flush();
    if (!out_.good()) throw Error(ErrorCode::Io, "cannot write '" + path_ + "'");
  }

 private:
  std::ofstream out_;
  std::string path_;
  bool first_ = true;
};

json to_json(const Vec3& v) { return {v[0], v[1], v[2]}; }
json to_json(const Vec8& v) {
  json a = json::array();
  for (int i = 0; i < 8; ++i) a.push_back(v[i]);
  return a;
}
json to_json(const Quat& q) { return {q.w(), q.x(), q.y(), q.z()}; }
json to_json(const Mat8& m) {
  json rows = json::array();
  for (int i = 0; i < 8; ++i) {
    json row = json::array();
    for (int j = 0; j < 8; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void print(const json& j) { std::fputs((j.dump(2) + "\n").c_str(), stdout); }

// ---- shared option groups ----

struct ScenarioArgs {
  std::string path;
  std::string variant;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& s) {
  auto* p = cmd->add_option("--scenario", s.path, "scenario JSON file");
  auto* v = cmd->add_option(
      "--variant", s.variant,
      "built-in scenario: screw | winder | gripper | rotatable-gripper");
  p->excludes(v);
  v->excludes(p);
}

Scenario load(const ScenarioArgs& s, bool validate = true) {
  Scenario sc;
  if (!s.path.empty())
    sc = load_scenario(s.path);
  else if (!s.variant.empty())
    sc = canonical_scenario(variant_from_name(s.variant));
  else
    throw Error(ErrorCode::InvalidArgument, "give --scenario or --variant");
  if (validate) validate_scenario(sc);
  return sc;
}

struct ConfigArgs {
  std::vector<double> position{0.0, 0.0, 1.0};
  double yaw = 0.0;
  std::vector<double> quat;
  std::vector<double> internal{0.0, 0.0};
};

void add_config_options(CLI::App* cmd, ConfigArgs& c) {
  cmd->add_option("--pose,--position", c.position, "base position x y z (m)")
      ->expected(3);
  auto* y = cmd->add_option("--yaw", c.yaw, "base yaw about +z (rad)");
  cmd->add_option("--quat", c.quat, "base orientation w x y z")
      ->expected(4)
      ->excludes(y);
  cmd->add_option("--internal", c.internal, "internal coordinates a b")
      ->expected(2);
}

Configuration to_configuration(const ConfigArgs& c) {
  Configuration q;
  q.base.position = Vec3(c.position[0], c.position[1], c.position[2]);
  if (!c.quat.empty()) {
    Quat quat(c.quat[0], c.quat[1], c.quat[2], c.quat[3]);
    if (quat.norm() < 1e-12)
      throw Error(ErrorCode::InvalidArgument, "zero quaternion");
    quat.normalize();
    q.base.orientation = quat;
  } else {
    q.base.orientation = Quat(Eigen::AngleAxisd(c.yaw, Vec3::UnitZ()));
  }
  q.internal = Vec2(c.internal[0], c.internal[1]);
  return q;
}

json scenario_header(const Scenario& sc) {
  return {{"scenario", sc.name}, {"variant", variant_name(sc.design.variant)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cable-driven parallel robot toolkit"};
  app.require_subcommand(1);
  long long seed = 0;
  app.add_option("--seed", seed,
                 "seed recorded in outputs; all solvers are deterministic");

  int exit_status = 0;

  // ---- validate ----
  auto* c_validate = app.add_subcommand(
      "validate", "check a scenario against every consistency rule");
  auto va_sc = std::make_shared<ScenarioArgs>();
  auto va_out = std::make_shared<std::string>();
  add_scenario_options(c_validate, *va_sc);
  c_validate->add_option("--out", *va_out,
                         "write the normalized scenario JSON (built-in "
                         "scenarios can be exported this way)");
  c_validate->callback([&, va_sc, va_out] {
    const Scenario sc = load(*va_sc, /*validate=*/false);
    const std::vector<std::string> violations = scenario_violations(sc);
    json out = scenario_header(sc);
    out["valid"] = violations.empty();
    out["violations"] = violations;
    if (!va_out->empty() && violations.empty()) save_scenario(sc, *va_out);
    print(out);
    if (!violations.empty()) exit_status = 1;
  });

  // ---- ik ----
  auto* c_ik = app.add_subcommand("ik", "cable lengths at a configuration");
  auto ik_sc = std::make_shared<ScenarioArgs>();
  auto ik_cfg = std::make_shared<ConfigArgs>();
  add_scenario_options(c_ik, *ik_sc);
  add_config_options(c_ik, *ik_cfg);
  c_ik->callback([&, ik_sc, ik_cfg] {
    const Scenario sc = load(*ik_sc);
    const Configuration q = to_configuration(*ik_cfg);
    json out = scenario_header(sc);
    out["lengths"] = to_json(inverse_kinematics(sc.geometry, sc.design, q));
    out["payload_angle"] = payload_angle(sc.design, q);
    print(out);
  });

  // ---- fk ----
  auto* c_fk = app.add_subcommand(
      "fk", "configuration that realizes the given cable lengths");
  auto fk_sc = std::make_shared<ScenarioArgs>();
  auto fk_lengths = std::make_shared<std::vector<double>>();
  auto fk_guess = std::make_shared<ConfigArgs>();
  add_scenario_options(c_fk, *fk_sc);
  c_fk->add_option("--lengths", *fk_lengths, "eight cable lengths (m)")
      ->expected(8)
      ->required();
  add_config_options(c_fk, *fk_guess);
  c_fk->get_option("--pose")->description("initial guess position");
  c_fk->callback([&, fk_sc, fk_lengths, fk_guess] {
    const Scenario sc = load(*fk_sc);
    Vec8 l;
    for (int i = 0; i < 8; ++i) l[i] = (*fk_lengths)[i];
    FkOptions opts;
    opts.singularity_threshold = sc.sim.singularity_threshold;
    const FkResult r = forward_kinematics(sc.geometry, sc.design, l,
                                          to_configuration(*fk_guess), opts);
    json out = scenario_header(sc);
    out["position"] = to_json(r.q.base.position);
    out["orientation"] = to_json(r.q.base.orientation);
    out["internal"] = {r.q.internal[0], r.q.internal[1]};
    out["iterations"] = r.iterations;
    out["residual"] = r.residual;
    print(out);
  });

  // ---- jacobian ----
  auto* c_jac = app.add_subcommand(
      "jacobian", "length Jacobian and conditioning at a configuration");
  auto jac_sc = std::make_shared<ScenarioArgs>();
  auto jac_cfg = std::make_shared<ConfigArgs>();
  add_scenario_options(c_jac, *jac_sc);
  add_config_options(c_jac, *jac_cfg);
  c_jac->callback([&, jac_sc, jac_cfg] {
    const Scenario sc = load(*jac_sc);
    const Configuration q = to_configuration(*jac_cfg);
    const Mat8 J = jacobian(sc.geometry, sc.design, q);
    json out = scenario_header(sc);
    out["jacobian"] = to_json(J);
    out["condition_number"] = condition_number(
        J, sc.geometry.rod_radius, internal_layout(sc.design.variant));
    print(out);
  });

  // ---- statics ----
  auto* c_statics = app.add_subcommand(
      "statics", "static cable tensions under gravity and springs");
  auto st_sc = std::make_shared<ScenarioArgs>();
  auto st_cfg = std::make_shared<ConfigArgs>();
  add_scenario_options(c_statics, *st_sc);
  add_config_options(c_statics, *st_cfg);
  c_statics->callback([&, st_sc, st_cfg] {
    const Scenario sc = load(*st_sc);
    const StaticsSolution sol =
        solve_statics(sc.geometry, sc.design, to_configuration(*st_cfg));
    json out = scenario_header(sc);
    out["tensions"] = to_json(sol.verdict.tensions);
    out["feasible"] = sol.verdict.feasible;
    out["below_min"] = sol.verdict.below_min;
    out["above_max"] = sol.verdict.above_max;
    out["residual"] = sol.verdict.residual;
    json lengths = json::array();
    for (const CableState& c : sol.cables) lengths.push_back(c.length);
    out["lengths"] = lengths;
    print(out);
  });

  // ---- workspace ----
  auto* c_ws = app.add_subcommand(
      "workspace", "feasibility verdict over a position x yaw grid");
  auto ws_sc = std::make_shared<ScenarioArgs>();
  auto ws_grid = std::make_shared<std::vector<int>>();
  auto ws_x = std::make_shared<std::vector<double>>(std::vector<double>{-0.6, 0.6});
  auto ws_y = std::make_shared<std::vector<double>>(std::vector<double>{-0.6, 0.6});
  auto ws_z = std::make_shared<std::vector<double>>(std::vector<double>{0.5, 1.5});
  auto ws_out = std::make_shared<std::string>();
  add_scenario_options(c_ws, *ws_sc);
  c_ws->add_option("--grid", *ws_grid,
                   "samples per axis: nx ny nz [nyaw]; three counts imply a "
                   "single yaw slice (default 21 21 11 8)")
      ->expected(3, 4);
  c_ws->add_option("--xrange", *ws_x, "x sample range (m)")->expected(2);
  c_ws->add_option("--yrange", *ws_y, "y sample range (m)")->expected(2);
  c_ws->add_option("--zrange", *ws_z, "z sample range (m)")->expected(2);
  c_ws->add_option("--out", *ws_out, "write one CSV row per grid cell");
  c_ws->callback([&, ws_sc, ws_grid, ws_x, ws_y, ws_z, ws_out] {
    const Scenario sc = load(*ws_sc);
    WorkspaceGrid grid;  // defaults: 21 x 21 x 11 positions, 8 yaw samples
    grid.x = Axis{(*ws_x)[0], (*ws_x)[1], grid.x.n};
    grid.y = Axis{(*ws_y)[0], (*ws_y)[1], grid.y.n};
    grid.z = Axis{(*ws_z)[0], (*ws_z)[1], grid.z.n};
    if (!ws_grid->empty()) {
      grid.x.n = (*ws_grid)[0];
      grid.y.n = (*ws_grid)[1];
      grid.z.n = (*ws_grid)[2];
      grid.angles = ws_grid->size() == 4 ? (*ws_grid)[3] : 1;
    }
    if (grid.x.n < 1 || grid.y.n < 1 || grid.z.n < 1 || grid.angles < 1)
      throw Error(ErrorCode::InvalidArgument, "grid counts must be positive");
    const WorkspaceMap map = wrench_feasible_workspace(sc, grid);

    std::size_t counts[6] = {0, 0, 0, 0, 0, 0};
    for (Verdict v : map.verdicts) ++counts[static_cast<int>(v)];
    json out = scenario_header(sc);
    out["cells"] = map.verdicts.size();
    out["feasible"] = map.feasible_count;
    out["fraction"] =
        static_cast<double>(map.feasible_count) / map.verdicts.size();
    json by_verdict = json::object();
    for (int v = 0; v < 6; ++v)
      by_verdict[verdict_name(static_cast<Verdict>(v))] = counts[v];
    out["verdicts"] = by_verdict;
    out["seed"] = seed;

    if (!ws_out->empty()) {
      Csv csv(*ws_out);
      csv.field("x").field("y").field("z").field("payload_yaw").field("code")
          .field("verdict");
      csv.end_row();
      for (int ix = 0; ix < grid.x.n; ++ix)
        for (int iy = 0; iy < grid.y.n; ++iy)
          for (int iz = 0; iz < grid.z.n; ++iz)
            for (int ia = 0; ia < grid.angles; ++ia) {
              const Verdict v = map.at(ix, iy, iz, ia);
              csv.field(grid.x.sample(ix))
                  .field(grid.y.sample(iy))
                  .field(grid.z.sample(iz))
                  .field(grid.yaw(ia))
                  .field(static_cast<int>(v))
                  .field(verdict_name(v));
              csv.end_row();
            }
      csv.finish();
      out["rows"] = map.verdicts.size();
      out["csv"] = *ws_out;
    }
    print(out);
  });

  // ---- rotws ----
  auto* c_rot = app.add_subcommand(
      "rotws", "reachable payload-yaw intervals at a fixed position");
  auto rot_sc = std::make_shared<ScenarioArgs>();
  auto rot_pos = std::make_shared<std::vector<double>>(std::vector<double>{0.0, 0.0, 1.0});
  auto rot_samples = std::make_shared<std::vector<int>>(std::vector<int>{81, 33});
  add_scenario_options(c_rot, *rot_sc);
  c_rot->add_option("--pose,--position", *rot_pos, "base position x y z (m)")
      ->expected(3);
  c_rot->add_option("--samples", *rot_samples,
                    "travel and bearing-angle sample counts")
      ->expected(2);
  c_rot->callback([&, rot_sc, rot_pos, rot_samples] {
    const Scenario sc = load(*rot_sc);
    const RotationalWorkspace rw = rotational_workspace(
        sc, Vec3((*rot_pos)[0], (*rot_pos)[1], (*rot_pos)[2]),
        (*rot_samples)[0], (*rot_samples)[1]);
    json out = scenario_header(sc);
    json intervals = json::array();
    for (const auto& iv : rw.intervals) intervals.push_back({iv[0], iv[1]});
    out["intervals"] = intervals;
    out["width"] = rw.width;
    out["turns"] = rw.width / (2.0 * EIGEN_PI);
    out["continuous_rotation"] = rw.continuous_rotation;
    print(out);
  });

  // ---- interference ----
  auto* c_int = app.add_subcommand(
      "interference", "cable-cable and cable-body distances at a configuration");
  auto in_sc = std::make_shared<ScenarioArgs>();
  auto in_cfg = std::make_shared<ConfigArgs>();
  auto in_all = std::make_shared<bool>(false);
  add_scenario_options(c_int, *in_sc);
  add_config_options(c_int, *in_cfg);
  c_int->add_flag("--all", *in_all, "list every pair, not only flagged ones");
  c_int->callback([&, in_sc, in_cfg, in_all] {
    const Scenario sc = load(*in_sc);
    const InterferenceReport rep = check_interference(
        sc.geometry, sc.design, to_configuration(*in_cfg), sc.sim.clearance);
    json out = scenario_header(sc);
    out["clearance"] = sc.sim.clearance;
    out["min_distance"] = rep.min_distance;
    out["clear"] = rep.clear;
    json entries = json::array();
    for (const InterferenceEntry& e : rep.entries) {
      if (!*in_all && !e.flagged) continue;
      json j{{"kind", e.kind == PairKind::CableCable ? "cable-cable"
                                                     : "cable-body"},
             {"cable", e.cable}};
      if (e.kind == PairKind::CableCable)
        j["other_cable"] = e.other_cable;
      else
        j["body"] = body_name(e.body);
      j["distance"] = e.distance;
      j["flagged"] = e.flagged;
      entries.push_back(j);
    }
    out["entries"] = entries;
    print(out);
  });

  // ---- traj ----
  auto* c_traj = app.add_subcommand(
      "traj", "sample a waypoint plan as a smooth trajectory");
  auto tj_sc = std::make_shared<ScenarioArgs>();
  auto tj_plan = std::make_shared<std::string>();
  auto tj_rate = std::make_shared<double>(100.0);
  auto tj_out = std::make_shared<std::string>();
  add_scenario_options(c_traj, *tj_sc);
  c_traj->add_option("--plan", *tj_plan, "plan JSON file")->required();
  c_traj->add_option("--rate", *tj_rate, "samples per second");
  c_traj->add_option("--out", *tj_out, "write one CSV row per sample");
  c_traj->callback([&, tj_sc, tj_plan, tj_rate, tj_out] {
    if (!(*tj_rate > 0.0))
      throw Error(ErrorCode::InvalidArgument, "rate must be positive");
    const Scenario sc = load(*tj_sc);
    const Trajectory traj = load_plan(*tj_plan);
    const double dt = 1.0 / *tj_rate;
    const int n = static_cast<int>(traj.total_duration / dt) + 1;
    double max_speed = 0.0;
    bool in_stroke = true;
    for (int i = 0; i <= n; ++i) {
      const TrajectorySample s =
          sample_trajectory(traj, std::min(i * dt, traj.total_duration));
      max_speed = std::max(max_speed, s.velocity.head<3>().norm());
      in_stroke = in_stroke && within_stroke(sc.design, s.q.internal, 1e-9);
    }
    json out = scenario_header(sc);
    out["waypoints"] = traj.waypoints.size();
    out["duration"] = traj.total_duration;
    out["samples"] = n + 1;
    out["max_speed"] = max_speed;
    out["within_stroke"] = in_stroke;
    if (!tj_out->empty()) {
      Csv csv(*tj_out);
      csv.field("t").field("x").field("y").field("z").field("qw").field("qx")
          .field("qy").field("qz").field("internal0").field("internal1");
      for (int k = 0; k < 8; ++k) csv.field("v" + std::to_string(k));
      for (int k = 0; k < 8; ++k) csv.field("length" + std::to_string(k));
      csv.end_row();
      for (int i = 0; i <= n; ++i) {
        const TrajectorySample s =
            sample_trajectory(traj, std::min(i * dt, traj.total_duration));
        csv.field(s.time)
            .field(s.q.base.position[0])
            .field(s.q.base.position[1])
            .field(s.q.base.position[2])
            .field(s.q.base.orientation.w())
            .field(s.q.base.orientation.x())
            .field(s.q.base.orientation.y())
            .field(s.q.base.orientation.z())
            .field(s.q.internal[0])
            .field(s.q.internal[1]);
        for (int k = 0; k < 8; ++k) csv.field(s.velocity[k]);
        const Vec8 lengths = inverse_kinematics(sc.geometry, sc.design, s.q);
        for (int k = 0; k < 8; ++k) csv.field(lengths[k]);
        csv.end_row();
      }
      csv.finish();
      out["csv"] = *tj_out;
    }
    print(out);
  });

  // ---- rollout ----
  auto* c_roll = app.add_subcommand(
      "rollout", "track a plan with length-servoed cables and log each tick");
  auto ro_sc = std::make_shared<ScenarioArgs>();
  auto ro_plan = std::make_shared<std::string>();
  auto ro_out = std::make_shared<std::string>();
  add_scenario_options(c_roll, *ro_sc);
  c_roll->add_option("--plan", *ro_plan, "plan JSON file")->required();
  c_roll->add_option("--out", *ro_out, "write one CSV row per control tick");
  c_roll->callback([&, ro_sc, ro_plan, ro_out] {
    const Scenario sc = load(*ro_sc);
    const Trajectory traj = load_plan(*ro_plan);
    const RolloutResult r = kinematic_rollout(sc, traj);

    std::size_t counts[6] = {0, 0, 0, 0, 0, 0};
    for (const RolloutTick& t : r.ticks) ++counts[static_cast<int>(t.verdict)];
    json out = scenario_header(sc);
    out["ticks"] = r.ticks.size();
    out["diverged"] = r.diverged;
    out["max_tracking_error"] = r.max_tracking_error;
    out["final_time"] = r.final_state.t;
    json by_verdict = json::object();
    for (int v = 0; v < 6; ++v)
      if (counts[v] > 0)
        by_verdict[verdict_name(static_cast<Verdict>(v))] = counts[v];
    out["verdicts"] = by_verdict;
    out["seed"] = seed;

    if (!ro_out->empty()) {
      Csv csv(*ro_out);
      csv.field("t");
      for (int k = 0; k < 8; ++k) csv.field("commanded" + std::to_string(k));
      for (int k = 0; k < 8; ++k) csv.field("realized" + std::to_string(k));
      for (int k = 0; k < 8; ++k) csv.field("tension" + std::to_string(k));
      csv.field("tracking_error").field("code");
      csv.end_row();
      for (const RolloutTick& t : r.ticks) {
        csv.field(t.time);
        for (int k = 0; k < 8; ++k) csv.field(t.commanded_lengths[k]);
        for (int k = 0; k < 8; ++k) csv.field(t.realized_lengths[k]);
        for (int k = 0; k < 8; ++k) csv.field(t.tensions[k]);
        csv.field(t.tracking_error).field(static_cast<int>(t.verdict));
        csv.end_row();
      }
      csv.finish();
      out["csv"] = *ro_out;
    }
    print(out);
    if (r.diverged) exit_status = 2;
  });

  // ---- optimize ----
  auto* c_opt = app.add_subcommand(
      "optimize", "tune design parameters against a workspace objective");
  auto op_sc = std::make_shared<ScenarioArgs>();
  auto op_params = std::make_shared<std::vector<std::string>>();
  auto op_min = std::make_shared<std::vector<double>>();
  auto op_max = std::make_shared<std::vector<double>>();
  auto op_obj = std::make_shared<std::string>("rotational-stroke");
  auto op_budget = std::make_shared<int>(60);
  auto op_pos = std::make_shared<std::vector<double>>(std::vector<double>{0.0, 0.0, 1.0});
  auto op_out = std::make_shared<std::string>();
  add_scenario_options(c_opt, *op_sc);
  c_opt->add_option("--param", *op_params,
                    "free parameter(s): spring-stiffness | "
                    "spring-free-extension | lead")
      ->required();
  c_opt->add_option("--min", *op_min, "lower bound per parameter")->required();
  c_opt->add_option("--max", *op_max, "upper bound per parameter")->required();
  c_opt->add_option("--objective", *op_obj,
                    "rotational-stroke | workspace-volume");
  c_opt->add_option("--budget", *op_budget, "objective evaluation budget");
  c_opt->add_option("--pose,--position", *op_pos,
                    "where rotational stroke is measured")
      ->expected(3);
  c_opt->add_option("--out", *op_out, "write one CSV row per evaluation");
  c_opt->callback([&, op_sc, op_params, op_min, op_max, op_obj, op_budget,
                   op_pos, op_out] {
    const Scenario sc = load(*op_sc);
    if (op_min->size() != op_params->size() ||
        op_max->size() != op_params->size())
      throw Error(ErrorCode::InvalidArgument,
                  "--min/--max must list one bound per --param");
    OptimizeOptions opts;
    for (const std::string& name : *op_params)
      opts.params.push_back(free_param_from_name(name));
    for (std::size_t i = 0; i < op_min->size(); ++i)
      opts.bounds.push_back({(*op_min)[i], (*op_max)[i]});
    opts.objective = objective_from_name(*op_obj);
    opts.budget = *op_budget;
    opts.position = Vec3((*op_pos)[0], (*op_pos)[1], (*op_pos)[2]);
    const OptimizeResult r = optimize_parameters(sc, opts);

    json out = scenario_header(sc);
    out["objective"] = *op_obj;
    out["status"] = r.status == OptimizeResult::Status::Ok ? "ok"
                                                           : "all-infeasible";
    json best = json::object();
    for (std::size_t i = 0; i < r.best_params.size(); ++i)
      best[(*op_params)[i]] = r.best_params[i];
    out["best"] = best;
    if (r.status == OptimizeResult::Status::Ok)
      out["best_objective"] = r.best_objective;
    out["evaluations"] = r.evaluations;
    out["seed"] = seed;

    if (!op_out->empty()) {
      Csv csv(*op_out);
      csv.field("evaluation");
      for (const std::string& name : *op_params) csv.field(name);
      csv.field("value");
      csv.end_row();
      int k = 0;
      for (const SearchTracePoint& p : r.trace) {
        csv.field(k++);
        for (double v : p.params) csv.field(v);
        csv.field(p.value);
        csv.end_row();
      }
      csv.finish();
      out["csv"] = *op_out;
    }
    print(out);
    if (r.status != OptimizeResult::Status::Ok) exit_status = 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  }
  return exit_status;
}
