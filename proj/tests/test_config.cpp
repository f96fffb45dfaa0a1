#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "ecpid/config.hpp"

using namespace ecpid;

namespace {

std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path;
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("minimal vehicle config fills every documented default") {
  const ExperimentSpec spec = parse_config(R"({"scenario": {"type": "vehicle"}})");
  const SimConfig& cfg = spec.base;
  CHECK(cfg.scenario == ScenarioType::kVehicle);
  CHECK(cfg.dt == 1e-3);
  CHECK(cfg.duration == 20.0);
  CHECK(cfg.integrator == Integrator::kRk4);
  CHECK(cfg.controller.type == ControllerType::kEcPidunn);
  CHECK(cfg.controller.tau == 2.0);
  CHECK(cfg.controller.rho_scale == 0.1);
  CHECK(cfg.controller.seed == 42);
  CHECK(cfg.controller.topology == std::vector<int>{6, 16, 16, 3});
  CHECK(cfg.controller.i_max == 1e3);
  CHECK(cfg.vehicle.v_target == 20.0);
  CHECK(cfg.vehicle.steering_target == 0.5);
  CHECK(cfg.vehicle.steering_mode == SteeringMode::kHeading);
  CHECK(cfg.vehicle.longitudinal.mass == 1200.0);
  CHECK(cfg.vehicle.longitudinal.drag_coeff == 0.3);
  CHECK(cfg.vehicle.longitudinal.frontal_area == 2.2);
  CHECK(cfg.vehicle.longitudinal.air_density == 1.225);
  CHECK(cfg.vehicle.longitudinal.f_max == 4000.0);
  CHECK(cfg.vehicle.ackermann.wheelbase == 2.5);
  CHECK(cfg.vehicle.ackermann.phi_max == 0.6);
  CHECK(spec.out_dir == "out");
  CHECK(spec.report_format == "csv");
  CHECK(spec.sweep.empty());
  CHECK(spec.metrics.rise_lo == 0.10);
  CHECK(spec.metrics.settle_band == 0.02);
}

TEST_CASE("minimal pan-tilt config defaults") {
  const ExperimentSpec spec = parse_config(R"({"scenario": {"type": "pan_tilt"}})");
  const SimConfig& cfg = spec.base;
  CHECK(cfg.scenario == ScenarioType::kPanTilt);
  CHECK(cfg.pan_tilt.z == 1.0);
  CHECK(cfg.pan_tilt.target.kind == TargetKind::kSinusoid);
  CHECK(cfg.pan_tilt.target.radius == 1.0);  // resolved to z
  CHECK(cfg.pan_tilt.target.omega == 0.5);
  CHECK(cfg.pan_tilt.params.inertia_pan == 0.05);
  CHECK(cfg.pan_tilt.params.damping_pan == 0.1);
  CHECK(cfg.pan_tilt.params.torque_max == 2.0);
}

TEST_CASE("tau = 0 is rejected naming controller.tau") {
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "controller": {"tau": 0.0}})") == "controller.tau");
}

TEST_CASE("validation errors carry key paths") {
  CHECK(error_path(R"({})") == "scenario");
  CHECK(error_path(R"({"scenario": {}})") == "scenario.type");
  CHECK(error_path(R"({"scenario": {"type": "boat"}})") == "scenario.type");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"}, "sim": {"dt": -1}})") == "sim.dt");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"}, "sim": {"dt": 30}})") == "sim.dt");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "plant": {"vehicle": {"wheelbase": 0}}})") == "plant.vehicle.wheelbase");
  CHECK(error_path(R"({"scenario": {"type": "pan_tilt", "z": 0}})") == "scenario.z");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "controller": {"type": "pid2"}})") == "controller.type");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "sim": {"integrator": "rk5"}})") == "sim.integrator");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "output": {"report_format": "yaml"}})") == "output.report_format");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "controller": {"rho0": [1, 2]}})") == "controller.rho0");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "controller": {"topology": [5, 3]}})") == "controller.topology");
  CHECK(error_path("not json at all") == "<document>");
}

TEST_CASE("unknown keys are hard errors with full paths") {
  CHECK(error_path(R"({"scenario": {"type": "vehicle", "vmax": 1}})") == "scenario.vmax");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"}, "outputs": {}})") == "outputs");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "controller": {"gains": {"pan": {}}}})") == "controller.gains.pan");
  CHECK(error_path(R"({"scenario": {"type": "pan_tilt",
                       "target": {"kind": "step", "speed": 1}}})") == "scenario.target.speed");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "plant": {"vehicle": {"mass": 100, "wheels": 4}}})") ==
        "plant.vehicle.wheels");
}

TEST_CASE("gains are parsed per loop") {
  const ExperimentSpec spec = parse_config(R"({
    "scenario": {"type": "vehicle"},
    "controller": {"gains": {"steering": {"kp": 1.5, "kd": 0.2}, "speed": {"ki": 30}}}
  })");
  CHECK(spec.base.controller.steering_gains.kp == 1.5);
  CHECK(spec.base.controller.steering_gains.kd == 0.2);
  CHECK(spec.base.controller.speed_gains.ki == 30.0);
}

TEST_CASE("sweep axes expand to the lexicographic cross product") {
  const ExperimentSpec spec = parse_config(R"({
    "scenario": {"type": "vehicle"},
    "sweep": {"tau": [0.5, 1, 2, 4], "seeds": [1, 2, 3]}
  })");
  const auto runs = spec.enumerate_runs();
  REQUIRE(runs.size() == 12);
  // taus are the outer axis, seeds the inner one.
  CHECK(runs[0].config.controller.tau == 0.5);
  CHECK(runs[0].config.controller.seed == 1);
  CHECK(runs[1].config.controller.tau == 0.5);
  CHECK(runs[1].config.controller.seed == 2);
  CHECK(runs[3].config.controller.tau == 1.0);
  CHECK(runs[3].config.controller.seed == 1);
  CHECK(runs[11].config.controller.tau == 4.0);
  CHECK(runs[11].config.controller.seed == 3);
  CHECK(runs[0].id == "run000_ec_pidunn_tau0.5_seed1");
  CHECK(runs[11].id == "run011_ec_pidunn_tau4_seed3");
  // Two enumerations agree exactly.
  const auto again = spec.enumerate_runs();
  for (std::size_t i = 0; i < runs.size(); ++i) CHECK(runs[i].id == again[i].id);
}

TEST_CASE("controller sweep axis produces one run per variant") {
  const ExperimentSpec spec = parse_config(R"({
    "scenario": {"type": "vehicle"},
    "sweep": {"controllers": ["classical", "ec_pidunn"]}
  })");
  const auto runs = spec.enumerate_runs();
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].config.controller.type == ControllerType::kClassical);
  CHECK(runs[1].config.controller.type == ControllerType::kEcPidunn);
}

TEST_CASE("declared but empty sweep axes are rejected") {
  CHECK(error_path(R"({"scenario": {"type": "vehicle"}, "sweep": {"tau": []}})") == "sweep.tau");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"}, "sweep": {"seeds": []}})") ==
        "sweep.seeds");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"},
                       "sweep": {"controllers": []}})") == "sweep.controllers");
  CHECK(error_path(R"({"scenario": {"type": "vehicle"}, "sweep": {"tau": [0]}})") == "sweep.tau");
}

TEST_CASE("no sweep section still yields exactly one run") {
  const ExperimentSpec spec = parse_config(R"({"scenario": {"type": "vehicle"}})");
  const auto runs = spec.enumerate_runs();
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].config.controller.type == spec.base.controller.type);
  CHECK(runs[0].config.controller.tau == spec.base.controller.tau);
}

TEST_CASE("serialize/parse round-trip reproduces the ExperimentSpec") {
  const char* doc = R"({
    "scenario": {"type": "pan_tilt", "z": 2.5,
                 "target": {"kind": "line", "x": 0.2, "y": -0.1, "vx": 0.05, "vy": 0.02}},
    "controller": {"type": "ec_pidunn", "tau": 1.5, "rho_scale": 0.07, "seed": 1001,
                   "topology": [6, 8, 3], "rho0": [0.01, 0.02, -0.01],
                   "delta_eps_mode": "error_difference",
                   "gains": {"pan": {"kp": 2.0, "ki": 0.5}, "tilt": {"kp": 1.0}}},
    "plant": {"pan_tilt": {"inertia_pan": 0.07, "torque_max": 1.5}},
    "sim": {"dt": 0.002, "duration": 12.0, "integrator": "euler"},
    "sweep": {"tau": [1, 2], "seeds": [5, 6, 7]},
    "output": {"dir": "results", "report_format": "json", "metrics": {"settle_band": 0.03}}
  })";
  const ExperimentSpec spec = parse_config(doc);
  const ExperimentSpec round = parse_config(serialize_config(spec));
  CHECK(round == spec);
  CHECK(serialize_config(round) == serialize_config(spec));

  // Defaults-only spec round-trips too.
  const ExperimentSpec minimal = parse_config(R"({"scenario": {"type": "vehicle"}})");
  CHECK(parse_config(serialize_config(minimal)) == minimal);
}

TEST_CASE("specs differing in one field compare unequal") {
  const ExperimentSpec a = parse_config(R"({"scenario": {"type": "vehicle"}})");
  ExperimentSpec b = a;
  CHECK(a == b);
  b.base.controller.seed = 43;
  CHECK(a != b);
}

TEST_CASE("enum names round-trip") {
  CHECK(controller_type_from_string(to_string(ControllerType::kClassical)) ==
        ControllerType::kClassical);
  CHECK(controller_type_from_string(to_string(ControllerType::kEcPidunn)) ==
        ControllerType::kEcPidunn);
  CHECK(scenario_type_from_string(to_string(ScenarioType::kVehicle)) == ScenarioType::kVehicle);
  CHECK(scenario_type_from_string(to_string(ScenarioType::kPanTilt)) == ScenarioType::kPanTilt);
  CHECK_THROWS_AS(controller_type_from_string("nn"), ConfigError);
  CHECK_THROWS_AS(scenario_type_from_string("boat"), ConfigError);
}

TEST_CASE("load_config reports unreadable files") {
  CHECK_THROWS_AS(load_config("/nonexistent/path/config.json"), ConfigError);
}
