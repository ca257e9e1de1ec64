#include "cablekit/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cablekit {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Schema, where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) fail(where + "." + key, "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& where, const char* key) {
  const json* v = find(obj, key);
  if (!v) fail(where, std::string("missing required key '") + key + "'");
  return *v;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double opt_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
  const json* v = find(obj, key);
  return v ? as_number(*v, where + "." + key) : fallback;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Vec3 as_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected [x, y, z]");
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = as_number(j[i], where);
  return v;
}

BodyId as_body(const json& j, const std::string& where) {
  const std::string s = as_string(j, where);
  try {
    return body_from_name(s);
  } catch (const Error&) {
    fail(where, "unknown body '" + s + "'");
  }
}

// ---- geometry ----

RobotGeometry parse_geometry(const json& j, const std::string& where) {
  check_keys(j, where,
             {"anchors", "attachments", "shapes", "rod_radius", "carrier_offset",
              "payload_offset", "ring_offset", "gripper_offset"});
  RobotGeometry g;

  const json& anchors = require(j, where, "anchors");
  if (!anchors.is_array()) fail(where + ".anchors", "expected an array");
  for (std::size_t i = 0; i < anchors.size(); ++i)
    g.anchors.push_back(
        as_vec3(anchors[i], where + ".anchors[" + std::to_string(i) + "]"));

  const json& atts = require(j, where, "attachments");
  if (!atts.is_array()) fail(where + ".attachments", "expected an array");
  for (std::size_t i = 0; i < atts.size(); ++i) {
    const std::string aw = where + ".attachments[" + std::to_string(i) + "]";
    check_keys(atts[i], aw, {"body", "point"});
    Attachment a;
    a.body = as_body(require(atts[i], aw, "body"), aw + ".body");
    a.point = as_vec3(require(atts[i], aw, "point"), aw + ".point");
    g.attachments.push_back(a);
  }

  const json& shapes = require(j, where, "shapes");
  if (!shapes.is_object()) fail(where + ".shapes", "expected an object");
  for (const auto& [name, shape] : shapes.items()) {
    const std::string sw = where + ".shapes." + name;
    BodyId b;
    try {
      b = body_from_name(name);
    } catch (const Error&) {
      fail(sw, "unknown body '" + name + "'");
    }
    check_keys(shape, sw, {"half_extents"});
    g.shapes[b].half_extents =
        as_vec3(require(shape, sw, "half_extents"), sw + ".half_extents");
  }

  g.rod_radius = as_number(require(j, where, "rod_radius"), where + ".rod_radius");
  g.carrier_offset =
      as_number(require(j, where, "carrier_offset"), where + ".carrier_offset");
  g.payload_offset = opt_number(j, where, "payload_offset", 0.0);
  g.ring_offset = opt_number(j, where, "ring_offset", 0.0);
  g.gripper_offset = opt_number(j, where, "gripper_offset", 0.0);
  return g;
}

json geometry_to_json(const RobotGeometry& g) {
  json j;
  j["anchors"] = json::array();
  for (const Vec3& a : g.anchors) j["anchors"].push_back({a[0], a[1], a[2]});
  j["attachments"] = json::array();
  for (const Attachment& a : g.attachments)
    j["attachments"].push_back(
        {{"body", body_name(a.body)},
         {"point", {a.point[0], a.point[1], a.point[2]}}});
  j["shapes"] = json::object();
  for (const auto& [b, shape] : g.shapes)
    j["shapes"][body_name(b)] = {
        {"half_extents",
         {shape.half_extents[0], shape.half_extents[1], shape.half_extents[2]}}};
  j["rod_radius"] = g.rod_radius;
  j["carrier_offset"] = g.carrier_offset;
  j["payload_offset"] = g.payload_offset;
  j["ring_offset"] = g.ring_offset;
  j["gripper_offset"] = g.gripper_offset;
  return j;
}

// ---- design ----

DesignSpec parse_design(const json& j, const std::string& where) {
  check_keys(j, where,
             {"variant", "lead", "winder", "aperture", "springs", "stroke",
              "tension_min", "tension_max", "bodies", "gravity"});
  DesignSpec d;

  const std::string vname =
      as_string(require(j, where, "variant"), where + ".variant");
  try {
    d.variant = variant_from_name(vname);
  } catch (const Error&) {
    fail(where + ".variant", "unknown variant '" + vname + "'");
  }

  d.lead = opt_number(j, where, "lead", 0.0);

  if (const json* w = find(j, "winder")) {
    const std::string ww = where + ".winder";
    check_keys(*w, ww, {"theta_max", "stroke_period"});
    d.winder.theta_max =
        as_number(require(*w, ww, "theta_max"), ww + ".theta_max");
    d.winder.stroke_period =
        as_number(require(*w, ww, "stroke_period"), ww + ".stroke_period");
  }

  if (const json* a = find(j, "aperture")) {
    const std::string aw = where + ".aperture";
    if (!a->is_array()) fail(aw, "expected an array of [travel, opening]");
    for (std::size_t i = 0; i < a->size(); ++i) {
      const json& pt = (*a)[i];
      const std::string pw = aw + "[" + std::to_string(i) + "]";
      if (!pt.is_array() || pt.size() != 2) fail(pw, "expected [travel, opening]");
      d.aperture.points.push_back(
          {as_number(pt[0], pw), as_number(pt[1], pw)});
    }
  }

  if (const json* s = find(j, "springs")) {
    const std::string sw = where + ".springs";
    if (!s->is_object()) fail(sw, "expected an object keyed by coordinate");
    for (const auto& [key, sp] : s->items()) {
      if (key != "0" && key != "1")
        fail(sw + "." + key, "spring coordinate must be \"0\" or \"1\"");
      const std::string pw = sw + "." + key;
      check_keys(sp, pw,
                 {"stiffness", "free_extension", "installed_extension",
                  "min_extension"});
      SpringParams p;
      p.stiffness = as_number(require(sp, pw, "stiffness"), pw + ".stiffness");
      p.free_extension =
          as_number(require(sp, pw, "free_extension"), pw + ".free_extension");
      p.installed_extension = as_number(require(sp, pw, "installed_extension"),
                                        pw + ".installed_extension");
      p.min_extension = opt_number(sp, pw, "min_extension", 0.0);
      d.springs[key == "0" ? 0 : 1] = p;
    }
  }

  const json& stroke = require(j, where, "stroke");
  const std::string kw = where + ".stroke";
  if (!stroke.is_array() || stroke.size() != 2)
    fail(kw, "expected [[lo, hi], [lo, hi]]");
  for (int c = 0; c < 2; ++c) {
    const json& pair = stroke[c];
    const std::string cw = kw + "[" + std::to_string(c) + "]";
    if (!pair.is_array() || pair.size() != 2) fail(cw, "expected [lo, hi]");
    d.stroke[c][0] = as_number(pair[0], cw);
    d.stroke[c][1] = as_number(pair[1], cw);
  }

  d.tension_min =
      as_number(require(j, where, "tension_min"), where + ".tension_min");
  d.tension_max =
      as_number(require(j, where, "tension_max"), where + ".tension_max");

  const json& bodies = require(j, where, "bodies");
  const std::string bw = where + ".bodies";
  if (!bodies.is_object()) fail(bw, "expected an object keyed by body name");
  for (const auto& [name, mp] : bodies.items()) {
    const std::string pw = bw + "." + name;
    BodyId b;
    try {
      b = body_from_name(name);
    } catch (const Error&) {
      fail(pw, "unknown body '" + name + "'");
    }
    check_keys(mp, pw, {"mass", "inertia"});
    d.bodies[b].mass = as_number(require(mp, pw, "mass"), pw + ".mass");
    d.bodies[b].inertia = as_vec3(require(mp, pw, "inertia"), pw + ".inertia");
  }

  if (const json* g = find(j, "gravity"))
    d.gravity = as_vec3(*g, where + ".gravity");
  return d;
}

json design_to_json(const DesignSpec& d) {
  json j;
  j["variant"] = variant_name(d.variant);
  j["lead"] = d.lead;
  j["winder"] = {{"theta_max", d.winder.theta_max},
                 {"stroke_period", d.winder.stroke_period}};
  j["aperture"] = json::array();
  for (const auto& pt : d.aperture.points)
    j["aperture"].push_back({pt[0], pt[1]});
  j["springs"] = json::object();
  for (const auto& [coord, sp] : d.springs)
    j["springs"][std::to_string(coord)] = {
        {"stiffness", sp.stiffness},
        {"free_extension", sp.free_extension},
        {"installed_extension", sp.installed_extension},
        {"min_extension", sp.min_extension}};
  j["stroke"] = {{d.stroke[0][0], d.stroke[0][1]},
                 {d.stroke[1][0], d.stroke[1][1]}};
  j["tension_min"] = d.tension_min;
  j["tension_max"] = d.tension_max;
  j["bodies"] = json::object();
  for (const auto& [b, mp] : d.bodies)
    j["bodies"][body_name(b)] = {
        {"mass", mp.mass},
        {"inertia", {mp.inertia[0], mp.inertia[1], mp.inertia[2]}}};
  j["gravity"] = {d.gravity[0], d.gravity[1], d.gravity[2]};
  return j;
}

// ---- simulation ----

SimParams parse_simulation(const json& j, const std::string& where) {
  check_keys(j, where,
             {"dt", "control_period", "clearance", "cable_stiffness",
              "cable_damping", "singularity_threshold"});
  SimParams s;
  s.dt = opt_number(j, where, "dt", s.dt);
  s.control_period = opt_number(j, where, "control_period", s.control_period);
  s.clearance = opt_number(j, where, "clearance", s.clearance);
  s.cable_stiffness = opt_number(j, where, "cable_stiffness", s.cable_stiffness);
  s.cable_damping = opt_number(j, where, "cable_damping", s.cable_damping);
  s.singularity_threshold =
      opt_number(j, where, "singularity_threshold", s.singularity_threshold);
  return s;
}

json simulation_to_json(const SimParams& s) {
  return {{"dt", s.dt},
          {"control_period", s.control_period},
          {"clearance", s.clearance},
          {"cable_stiffness", s.cable_stiffness},
          {"cable_damping", s.cable_damping},
          {"singularity_threshold", s.singularity_threshold}};
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof())
    throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  return ss.str();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, "$", {"name", "geometry", "design", "simulation"});
  Scenario sc;
  if (const json* n = find(j, "name")) sc.name = as_string(*n, "$.name");
  sc.geometry = parse_geometry(require(j, "$", "geometry"), "$.geometry");
  sc.design = parse_design(require(j, "$", "design"), "$.design");
  if (const json* s = find(j, "simulation"))
    sc.sim = parse_simulation(*s, "$.simulation");
  return sc;
}

std::string format_scenario(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["geometry"] = geometry_to_json(sc.geometry);
  j["design"] = design_to_json(sc.design);
  j["simulation"] = simulation_to_json(sc.sim);
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(read_file(path));
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << format_scenario(sc);
  if (!out.good()) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
}

Trajectory parse_plan(const std::string& text) {
  const json j = parse_text(text);
  check_keys(j, "$", {"waypoints", "durations"});

  const json& wps = require(j, "$", "waypoints");
  if (!wps.is_array()) fail("$.waypoints", "expected an array");
  std::vector<Configuration> waypoints;
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const std::string w = "$.waypoints[" + std::to_string(i) + "]";
    const json& wp = wps[i];
    check_keys(wp, w, {"position", "yaw", "orientation", "internal"});
    Configuration q;
    q.base.position = as_vec3(require(wp, w, "position"), w + ".position");
    const json* yaw = find(wp, "yaw");
    const json* ori = find(wp, "orientation");
    if (yaw && ori) fail(w, "give either yaw or orientation, not both");
    if (yaw) {
      q.base.orientation =
          Quat(Eigen::AngleAxisd(as_number(*yaw, w + ".yaw"), Vec3::UnitZ()));
    } else if (ori) {
      if (!ori->is_array() || ori->size() != 4)
        fail(w + ".orientation", "expected [w, x, y, z]");
      Quat quat(as_number((*ori)[0], w + ".orientation"),
                as_number((*ori)[1], w + ".orientation"),
                as_number((*ori)[2], w + ".orientation"),
                as_number((*ori)[3], w + ".orientation"));
      if (quat.norm() < 1e-12)
        fail(w + ".orientation", "zero quaternion");
      quat.normalize();
      q.base.orientation = quat;
    }
    if (const json* in = find(wp, "internal")) {
      if (!in->is_array() || in->size() != 2)
        fail(w + ".internal", "expected [a, b]");
      q.internal[0] = as_number((*in)[0], w + ".internal");
      q.internal[1] = as_number((*in)[1], w + ".internal");
    }
    waypoints.push_back(q);
  }

  const json& durs = require(j, "$", "durations");
  if (!durs.is_array()) fail("$.durations", "expected an array");
  std::vector<double> durations;
  for (std::size_t i = 0; i < durs.size(); ++i)
    durations.push_back(
        as_number(durs[i], "$.durations[" + std::to_string(i) + "]"));

  try {
    return plan_trajectory(waypoints, durations);
  } catch (const Error& e) {
    throw Error(ErrorCode::Schema, std::string("$.waypoints: ") + e.what());
  }
}

Trajectory load_plan(const std::string& path) {
  return parse_plan(read_file(path));
}

}  // namespace cablekit
