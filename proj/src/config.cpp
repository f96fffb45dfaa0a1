#include "ecpid/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace ecpid {

using nlohmann::json;

std::string to_string(ControllerType t) {
  return t == ControllerType::kClassical ? "classical" : "ec_pidunn";
}
std::string to_string(ScenarioType t) {
  return t == ScenarioType::kVehicle ? "vehicle" : "pan_tilt";
}
std::string to_string(Integrator i) { return i == Integrator::kEuler ? "euler" : "rk4"; }
std::string to_string(SteeringMode m) {
  return m == SteeringMode::kHeading ? "heading" : "steering_angle";
}
std::string to_string(TargetKind k) {
  switch (k) {
    case TargetKind::kStep: return "step";
    case TargetKind::kSinusoid: return "sinusoid";
    case TargetKind::kLine: return "line";
  }
  return "?";
}
std::string to_string(DeltaEpsMode m) {
  return m == DeltaEpsMode::kControlFeedback ? "control_feedback" : "error_difference";
}

ControllerType controller_type_from_string(const std::string& s) {
  if (s == "classical") return ControllerType::kClassical;
  if (s == "ec_pidunn") return ControllerType::kEcPidunn;
  throw ConfigError("controller.type", "unknown controller '" + s + "'");
}
ScenarioType scenario_type_from_string(const std::string& s) {
  if (s == "vehicle") return ScenarioType::kVehicle;
  if (s == "pan_tilt") return ScenarioType::kPanTilt;
  throw ConfigError("scenario.type", "unknown scenario '" + s + "'");
}

namespace {

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(join_path(path, item.key()), "unknown key");
  }
}

const json& require_object(const json& parent, const char* key, const std::string& path) {
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

double read_double(const json& obj, const char* key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join_path(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join_path(path, key), "must be finite");
  return d;
}

std::uint64_t read_u64(const json& obj, const char* key, const std::string& path,
                       std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError(join_path(path, key), "expected a non-negative integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0)
    throw ConfigError(join_path(path, key), "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string read_string(const json& obj, const char* key, const std::string& path,
                        const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join_path(path, key), "expected a string");
  return v.get<std::string>();
}

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw ConfigError(path, msg);
}

PidGains read_gains(const json& obj, const char* key, const std::string& path,
                    const PidGains& fallback) {
  if (!obj.contains(key)) return fallback;
  const std::string p = join_path(path, key);
  const json& g = require_object(obj, key, p);
  check_keys(g, p, {"kp", "ki", "kd"});
  PidGains out;
  out.kp = read_double(g, "kp", p, fallback.kp);
  out.ki = read_double(g, "ki", p, fallback.ki);
  out.kd = read_double(g, "kd", p, fallback.kd);
  return out;
}

void parse_scenario(const json& sc, SimConfig& cfg) {
  if (!sc.contains("type")) throw ConfigError("scenario.type", "missing required key");
  cfg.scenario = scenario_type_from_string(read_string(sc, "type", "scenario", ""));

  if (cfg.scenario == ScenarioType::kVehicle) {
    check_keys(sc, "scenario",
               {"type", "v_target", "steering_target", "steering_mode", "v0", "x0", "y0",
                "theta0", "phi0", "steer_rate_max"});
    auto& v = cfg.vehicle;
    v.v_target = read_double(sc, "v_target", "scenario", v.v_target);
    v.steering_target = read_double(sc, "steering_target", "scenario", v.steering_target);
    const std::string mode = read_string(sc, "steering_mode", "scenario", to_string(v.steering_mode));
    if (mode == "heading") v.steering_mode = SteeringMode::kHeading;
    else if (mode == "steering_angle") v.steering_mode = SteeringMode::kSteeringAngle;
    else throw ConfigError("scenario.steering_mode", "unknown mode '" + mode + "'");
    v.v0 = read_double(sc, "v0", "scenario", v.v0);
    v.x0 = read_double(sc, "x0", "scenario", v.x0);
    v.y0 = read_double(sc, "y0", "scenario", v.y0);
    v.theta0 = read_double(sc, "theta0", "scenario", v.theta0);
    v.phi0 = read_double(sc, "phi0", "scenario", v.phi0);
    v.steer_rate_max = read_double(sc, "steer_rate_max", "scenario", v.steer_rate_max);
    require(v.steer_rate_max > 0.0, "scenario.steer_rate_max", "must be > 0");
  } else {
    check_keys(sc, "scenario",
               {"type", "z", "target", "theta0", "theta_dot0", "phi0", "phi_dot0"});
    auto& p = cfg.pan_tilt;
    p.z = read_double(sc, "z", "scenario", p.z);
    require(p.z > 0.0, "scenario.z", "must be > 0");
    p.theta0 = read_double(sc, "theta0", "scenario", p.theta0);
    p.theta_dot0 = read_double(sc, "theta_dot0", "scenario", p.theta_dot0);
    p.phi0 = read_double(sc, "phi0", "scenario", p.phi0);
    p.phi_dot0 = read_double(sc, "phi_dot0", "scenario", p.phi_dot0);
    if (sc.contains("target")) {
      const json& tg = require_object(sc, "target", "scenario.target");
      check_keys(tg, "scenario.target", {"kind", "radius", "omega", "x", "y", "vx", "vy"});
      auto& t = p.target;
      const std::string kind = read_string(tg, "kind", "scenario.target", to_string(t.kind));
      if (kind == "step") t.kind = TargetKind::kStep;
      else if (kind == "sinusoid") t.kind = TargetKind::kSinusoid;
      else if (kind == "line") t.kind = TargetKind::kLine;
      else throw ConfigError("scenario.target.kind", "unknown kind '" + kind + "'");
      t.radius = read_double(tg, "radius", "scenario.target", p.z);
      require(t.radius >= 0.0, "scenario.target.radius", "must be >= 0");
      t.omega = read_double(tg, "omega", "scenario.target", t.omega);
      t.x = read_double(tg, "x", "scenario.target", t.x);
      t.y = read_double(tg, "y", "scenario.target", t.y);
      t.vx = read_double(tg, "vx", "scenario.target", t.vx);
      t.vy = read_double(tg, "vy", "scenario.target", t.vy);
    } else {
      p.target.radius = p.z;  // resolved sinusoid default
    }
  }
}

void parse_controller(const json& c, SimConfig& cfg) {
  check_keys(c, "controller",
             {"type", "tau", "rho_scale", "rho0", "seed", "topology", "i_max",
              "delta_eps_mode", "gains"});
  auto& ctrl = cfg.controller;
  ctrl.type = controller_type_from_string(read_string(c, "type", "controller", to_string(ctrl.type)));
  ctrl.tau = read_double(c, "tau", "controller", ctrl.tau);
  require(ctrl.tau > 0.0, "controller.tau", "must be > 0");
  ctrl.rho_scale = read_double(c, "rho_scale", "controller", ctrl.rho_scale);
  require(ctrl.rho_scale >= 0.0, "controller.rho_scale", "must be >= 0");
  if (c.contains("rho0")) {
    const json& r = c.at("rho0");
    if (!r.is_array() || r.size() != 3)
      throw ConfigError("controller.rho0", "expected an array of 3 numbers");
    for (int i = 0; i < 3; ++i) {
      if (!r[i].is_number()) throw ConfigError("controller.rho0", "expected an array of 3 numbers");
      ctrl.rho0[i] = r[i].get<double>();
    }
  }
  ctrl.seed = read_u64(c, "seed", "controller", ctrl.seed);
  if (c.contains("topology")) {
    const json& t = c.at("topology");
    if (!t.is_array() || t.size() < 2)
      throw ConfigError("controller.topology", "expected an array of at least 2 widths");
    ctrl.topology.clear();
    for (const auto& w : t) {
      if (!w.is_number_integer())
        throw ConfigError("controller.topology", "widths must be integers");
      ctrl.topology.push_back(w.get<int>());
    }
    require(ctrl.topology.front() == 6, "controller.topology", "input width must be 6");
    require(ctrl.topology.back() == 3, "controller.topology", "output width must be 3");
    for (int w : ctrl.topology) require(w >= 1, "controller.topology", "widths must be >= 1");
  }
  ctrl.i_max = read_double(c, "i_max", "controller", ctrl.i_max);
  require(ctrl.i_max > 0.0, "controller.i_max", "must be > 0");
  const std::string mode =
      read_string(c, "delta_eps_mode", "controller", to_string(ctrl.delta_eps_mode));
  if (mode == "control_feedback") ctrl.delta_eps_mode = DeltaEpsMode::kControlFeedback;
  else if (mode == "error_difference") ctrl.delta_eps_mode = DeltaEpsMode::kErrorDifference;
  else throw ConfigError("controller.delta_eps_mode", "unknown mode '" + mode + "'");

  if (c.contains("gains")) {
    const json& g = require_object(c, "gains", "controller.gains");
    if (cfg.scenario == ScenarioType::kVehicle) {
      check_keys(g, "controller.gains", {"steering", "speed"});
      ctrl.steering_gains = read_gains(g, "steering", "controller.gains", ctrl.steering_gains);
      ctrl.speed_gains = read_gains(g, "speed", "controller.gains", ctrl.speed_gains);
    } else {
      check_keys(g, "controller.gains", {"pan", "tilt"});
      ctrl.pan_gains = read_gains(g, "pan", "controller.gains", ctrl.pan_gains);
      ctrl.tilt_gains = read_gains(g, "tilt", "controller.gains", ctrl.tilt_gains);
    }
  }
}

void parse_plant(const json& p, SimConfig& cfg) {
  check_keys(p, "plant", {"vehicle", "pan_tilt"});
  if (p.contains("vehicle")) {
    const json& v = require_object(p, "vehicle", "plant.vehicle");
    check_keys(v, "plant.vehicle",
               {"mass", "drag_coeff", "frontal_area", "air_density", "wheelbase", "f_max",
                "phi_max"});
    auto& lp = cfg.vehicle.longitudinal;
    auto& ap = cfg.vehicle.ackermann;
    lp.mass = read_double(v, "mass", "plant.vehicle", lp.mass);
    require(lp.mass > 0.0, "plant.vehicle.mass", "must be > 0");
    lp.drag_coeff = read_double(v, "drag_coeff", "plant.vehicle", lp.drag_coeff);
    require(lp.drag_coeff >= 0.0, "plant.vehicle.drag_coeff", "must be >= 0");
    lp.frontal_area = read_double(v, "frontal_area", "plant.vehicle", lp.frontal_area);
    require(lp.frontal_area >= 0.0, "plant.vehicle.frontal_area", "must be >= 0");
    lp.air_density = read_double(v, "air_density", "plant.vehicle", lp.air_density);
    require(lp.air_density >= 0.0, "plant.vehicle.air_density", "must be >= 0");
    lp.f_max = read_double(v, "f_max", "plant.vehicle", lp.f_max);
    require(lp.f_max > 0.0, "plant.vehicle.f_max", "must be > 0");
    ap.wheelbase = read_double(v, "wheelbase", "plant.vehicle", ap.wheelbase);
    require(ap.wheelbase > 0.0, "plant.vehicle.wheelbase", "must be > 0");
    ap.phi_max = read_double(v, "phi_max", "plant.vehicle", ap.phi_max);
    require(ap.phi_max > 0.0 && ap.phi_max < M_PI / 2 - 1e-3, "plant.vehicle.phi_max",
            "must be in (0, pi/2)");
  }
  if (p.contains("pan_tilt")) {
    const json& t = require_object(p, "pan_tilt", "plant.pan_tilt");
    check_keys(t, "plant.pan_tilt",
               {"inertia_pan", "inertia_tilt", "damping_pan", "damping_tilt", "torque_max"});
    auto& pp = cfg.pan_tilt.params;
    pp.inertia_pan = read_double(t, "inertia_pan", "plant.pan_tilt", pp.inertia_pan);
    require(pp.inertia_pan > 0.0, "plant.pan_tilt.inertia_pan", "must be > 0");
    pp.inertia_tilt = read_double(t, "inertia_tilt", "plant.pan_tilt", pp.inertia_tilt);
    require(pp.inertia_tilt > 0.0, "plant.pan_tilt.inertia_tilt", "must be > 0");
    pp.damping_pan = read_double(t, "damping_pan", "plant.pan_tilt", pp.damping_pan);
    require(pp.damping_pan >= 0.0, "plant.pan_tilt.damping_pan", "must be >= 0");
    pp.damping_tilt = read_double(t, "damping_tilt", "plant.pan_tilt", pp.damping_tilt);
    require(pp.damping_tilt >= 0.0, "plant.pan_tilt.damping_tilt", "must be >= 0");
    pp.torque_max = read_double(t, "torque_max", "plant.pan_tilt", pp.torque_max);
    require(pp.torque_max > 0.0, "plant.pan_tilt.torque_max", "must be > 0");
  }
}

void parse_sim(const json& s, SimConfig& cfg) {
  check_keys(s, "sim", {"dt", "duration", "integrator"});
  cfg.dt = read_double(s, "dt", "sim", cfg.dt);
  require(cfg.dt > 0.0, "sim.dt", "must be > 0");
  cfg.duration = read_double(s, "duration", "sim", cfg.duration);
  require(cfg.duration > 0.0, "sim.duration", "must be > 0");
  require(cfg.dt <= cfg.duration, "sim.dt", "must be <= sim.duration");
  const std::string integ = read_string(s, "integrator", "sim", to_string(cfg.integrator));
  if (integ == "euler") cfg.integrator = Integrator::kEuler;
  else if (integ == "rk4") cfg.integrator = Integrator::kRk4;
  else throw ConfigError("sim.integrator", "unknown integrator '" + integ + "'");
}

void parse_sweep(const json& s, ExperimentSpec& spec) {
  check_keys(s, "sweep", {"controllers", "tau", "seeds"});
  if (s.contains("controllers")) {
    const json& a = s.at("controllers");
    if (!a.is_array()) throw ConfigError("sweep.controllers", "expected an array");
    require(!a.empty(), "sweep.controllers", "declared sweep axis must be non-empty");
    for (const auto& v : a) {
      if (!v.is_string()) throw ConfigError("sweep.controllers", "expected controller names");
      spec.sweep.controllers.push_back(controller_type_from_string(v.get<std::string>()));
    }
  }
  if (s.contains("tau")) {
    const json& a = s.at("tau");
    if (!a.is_array()) throw ConfigError("sweep.tau", "expected an array");
    require(!a.empty(), "sweep.tau", "declared sweep axis must be non-empty");
    for (const auto& v : a) {
      if (!v.is_number()) throw ConfigError("sweep.tau", "expected numbers");
      const double tau = v.get<double>();
      require(tau > 0.0 && std::isfinite(tau), "sweep.tau", "values must be finite and > 0");
      spec.sweep.taus.push_back(tau);
    }
  }
  if (s.contains("seeds")) {
    const json& a = s.at("seeds");
    if (!a.is_array()) throw ConfigError("sweep.seeds", "expected an array");
    require(!a.empty(), "sweep.seeds", "declared sweep axis must be non-empty");
    for (const auto& v : a) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ConfigError("sweep.seeds", "expected non-negative integers");
      spec.sweep.seeds.push_back(v.get<std::uint64_t>());
    }
  }
}

void parse_output(const json& o, ExperimentSpec& spec) {
  check_keys(o, "output", {"dir", "report_format", "metrics"});
  spec.out_dir = read_string(o, "dir", "output", spec.out_dir);
  require(!spec.out_dir.empty(), "output.dir", "must be non-empty");
  spec.report_format = read_string(o, "report_format", "output", spec.report_format);
  require(spec.report_format == "csv" || spec.report_format == "json", "output.report_format",
          "must be 'csv' or 'json'");
  if (o.contains("metrics")) {
    const json& m = require_object(o, "metrics", "output.metrics");
    check_keys(m, "output.metrics",
               {"rise_lo", "rise_hi", "settle_band", "ss_window", "rms_warmup"});
    auto& mc = spec.metrics;
    mc.rise_lo = read_double(m, "rise_lo", "output.metrics", mc.rise_lo);
    mc.rise_hi = read_double(m, "rise_hi", "output.metrics", mc.rise_hi);
    require(mc.rise_lo > 0.0 && mc.rise_lo < mc.rise_hi && mc.rise_hi < 1.0,
            "output.metrics.rise_lo", "need 0 < rise_lo < rise_hi < 1");
    mc.settle_band = read_double(m, "settle_band", "output.metrics", mc.settle_band);
    require(mc.settle_band > 0.0 && mc.settle_band < 1.0, "output.metrics.settle_band",
            "must be in (0, 1)");
    mc.ss_window = read_double(m, "ss_window", "output.metrics", mc.ss_window);
    require(mc.ss_window > 0.0 && mc.ss_window <= 1.0, "output.metrics.ss_window",
            "must be in (0, 1]");
    mc.rms_warmup = read_double(m, "rms_warmup", "output.metrics", mc.rms_warmup);
    require(mc.rms_warmup >= 0.0, "output.metrics.rms_warmup", "must be >= 0");
  }
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

json spec_to_json(const ExperimentSpec& spec) {
  const SimConfig& cfg = spec.base;
  json j;

  json sc;
  sc["type"] = to_string(cfg.scenario);
  if (cfg.scenario == ScenarioType::kVehicle) {
    const auto& v = cfg.vehicle;
    sc["v_target"] = v.v_target;
    sc["steering_target"] = v.steering_target;
    sc["steering_mode"] = to_string(v.steering_mode);
    sc["v0"] = v.v0;
    sc["x0"] = v.x0;
    sc["y0"] = v.y0;
    sc["theta0"] = v.theta0;
    sc["phi0"] = v.phi0;
    sc["steer_rate_max"] = v.steer_rate_max;
  } else {
    const auto& p = cfg.pan_tilt;
    sc["z"] = p.z;
    sc["theta0"] = p.theta0;
    sc["theta_dot0"] = p.theta_dot0;
    sc["phi0"] = p.phi0;
    sc["phi_dot0"] = p.phi_dot0;
    sc["target"] = {{"kind", to_string(p.target.kind)}, {"radius", p.target.radius},
                    {"omega", p.target.omega},          {"x", p.target.x},
                    {"y", p.target.y},                  {"vx", p.target.vx},
                    {"vy", p.target.vy}};
  }
  j["scenario"] = sc;

  const auto& c = cfg.controller;
  json jc;
  jc["type"] = to_string(c.type);
  jc["tau"] = c.tau;
  jc["rho_scale"] = c.rho_scale;
  jc["rho0"] = {c.rho0[0], c.rho0[1], c.rho0[2]};
  jc["seed"] = c.seed;
  jc["topology"] = c.topology;
  jc["i_max"] = c.i_max;
  jc["delta_eps_mode"] = to_string(c.delta_eps_mode);
  auto gains_json = [](const PidGains& g) {
    return json{{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}};
  };
  if (cfg.scenario == ScenarioType::kVehicle) {
    jc["gains"] = {{"steering", gains_json(c.steering_gains)},
                   {"speed", gains_json(c.speed_gains)}};
  } else {
    jc["gains"] = {{"pan", gains_json(c.pan_gains)}, {"tilt", gains_json(c.tilt_gains)}};
  }
  j["controller"] = jc;

  j["plant"]["vehicle"] = {{"mass", cfg.vehicle.longitudinal.mass},
                           {"drag_coeff", cfg.vehicle.longitudinal.drag_coeff},
                           {"frontal_area", cfg.vehicle.longitudinal.frontal_area},
                           {"air_density", cfg.vehicle.longitudinal.air_density},
                           {"wheelbase", cfg.vehicle.ackermann.wheelbase},
                           {"f_max", cfg.vehicle.longitudinal.f_max},
                           {"phi_max", cfg.vehicle.ackermann.phi_max}};
  j["plant"]["pan_tilt"] = {{"inertia_pan", cfg.pan_tilt.params.inertia_pan},
                            {"inertia_tilt", cfg.pan_tilt.params.inertia_tilt},
                            {"damping_pan", cfg.pan_tilt.params.damping_pan},
                            {"damping_tilt", cfg.pan_tilt.params.damping_tilt},
                            {"torque_max", cfg.pan_tilt.params.torque_max}};

  j["sim"] = {{"dt", cfg.dt}, {"duration", cfg.duration}, {"integrator", to_string(cfg.integrator)}};

  if (!spec.sweep.empty()) {
    json sw = json::object();
    if (!spec.sweep.controllers.empty()) {
      json a = json::array();
      for (auto ct : spec.sweep.controllers) a.push_back(to_string(ct));
      sw["controllers"] = a;
    }
    if (!spec.sweep.taus.empty()) sw["tau"] = spec.sweep.taus;
    if (!spec.sweep.seeds.empty()) sw["seeds"] = spec.sweep.seeds;
    j["sweep"] = sw;
  }

  j["output"] = {{"dir", spec.out_dir},
                 {"report_format", spec.report_format},
                 {"metrics",
                  {{"rise_lo", spec.metrics.rise_lo},
                   {"rise_hi", spec.metrics.rise_hi},
                   {"settle_band", spec.metrics.settle_band},
                   {"ss_window", spec.metrics.ss_window},
                   {"rms_warmup", spec.metrics.rms_warmup}}}};
  return j;
}

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("JSON parse failure: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<document>", "top level must be an object");
  check_keys(root, "", {"scenario", "controller", "plant", "sim", "sweep", "output"});

  ExperimentSpec spec;
  if (!root.contains("scenario")) throw ConfigError("scenario", "missing required section");
  parse_scenario(require_object(root, "scenario", "scenario"), spec.base);
  if (root.contains("controller"))
    parse_controller(require_object(root, "controller", "controller"), spec.base);
  if (root.contains("plant")) parse_plant(require_object(root, "plant", "plant"), spec.base);
  if (root.contains("sim")) parse_sim(require_object(root, "sim", "sim"), spec.base);
  if (root.contains("sweep")) parse_sweep(require_object(root, "sweep", "sweep"), spec);
  if (root.contains("output")) parse_output(require_object(root, "output", "output"), spec);

  spec.base.validate();  // backstop for cross-field constraints
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentSpec& spec) {
  return spec_to_json(spec).dump(2) + "\n";
}

bool ExperimentSpec::operator==(const ExperimentSpec& other) const {
  return spec_to_json(*this) == spec_to_json(other);
}

std::vector<RunVariant> ExperimentSpec::enumerate_runs() const {
  const std::vector<ControllerType> ctrls =
      sweep.controllers.empty() ? std::vector<ControllerType>{base.controller.type}
                                : sweep.controllers;
  const std::vector<double> taus =
      sweep.taus.empty() ? std::vector<double>{base.controller.tau} : sweep.taus;
  const std::vector<std::uint64_t> seeds =
      sweep.seeds.empty() ? std::vector<std::uint64_t>{base.controller.seed} : sweep.seeds;

  std::vector<RunVariant> runs;
  runs.reserve(ctrls.size() * taus.size() * seeds.size());
  int idx = 0;
  for (const auto ct : ctrls) {
    for (const double tau : taus) {
      for (const auto seed : seeds) {
        RunVariant rv;
        rv.config = base;
        rv.config.controller.type = ct;
        rv.config.controller.tau = tau;
        rv.config.controller.seed = seed;
        char num[8];
        std::snprintf(num, sizeof(num), "%03d", idx++);
        rv.id = std::string("run") + num + "_" + to_string(ct) + "_tau" + fmt_short(tau) +
                "_seed" + std::to_string(seed);
        runs.push_back(std::move(rv));
      }
    }
  }
  return runs;
}

}  // namespace ecpid
