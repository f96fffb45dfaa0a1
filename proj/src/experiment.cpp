#include "ecpid/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ecpid/network.hpp"
#include "ecpid/version.hpp"

namespace ecpid {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool ExperimentResult::any_diverged() const {
  return std::any_of(runs.begin(), runs.end(),
                     [](const RunResult& r) { return r.status != "ok"; });
}

namespace {

const PidGains& baseline_for_loop(const SimConfig& cfg, const std::string& loop) {
  const auto& c = cfg.controller;
  if (loop == "steering") return c.steering_gains;
  if (loop == "speed") return c.speed_gains;
  if (loop == "pan") return c.pan_gains;
  return c.tilt_gains;
}

void append_provenance(std::string& out, const RunVariant& v, const std::string& loop_name) {
  const SimConfig& cfg = v.config;
  auto line = [&out](const std::string& key, const std::string& val) {
    out += "# ";
    out += key;
    out += "=";
    out += val;
    out += "\n";
  };
  line("version", kVersion);
  line("run", v.id);
  line("loop", loop_name);
  line("scenario", to_string(cfg.scenario));
  line("integrator", to_string(cfg.integrator));
  line("dt", format_number(cfg.dt));
  line("duration", format_number(cfg.duration));

  const auto& c = cfg.controller;
  line("controller", to_string(c.type));
  line("tau", format_number(c.tau));
  line("rho_scale", format_number(c.rho_scale));
  line("rho0", format_number(c.rho0[0]) + "," + format_number(c.rho0[1]) + "," +
                   format_number(c.rho0[2]));
  line("seed", std::to_string(c.seed));
  std::string topo;
  for (std::size_t i = 0; i < c.topology.size(); ++i) {
    if (i) topo += ",";
    topo += std::to_string(c.topology[i]);
  }
  line("topology", topo);
  line("delta_eps_mode", to_string(c.delta_eps_mode));
  line("i_max", format_number(c.i_max));
  line("weight_init", kWeightInitScheme);

  const PidGains& g = baseline_for_loop(cfg, loop_name);
  line("baseline.kp", format_number(g.kp));
  line("baseline.ki", format_number(g.ki));
  line("baseline.kd", format_number(g.kd));

  if (cfg.scenario == ScenarioType::kVehicle) {
    const auto& lp = cfg.vehicle.longitudinal;
    const auto& ap = cfg.vehicle.ackermann;
    line("plant.mass", format_number(lp.mass));
    line("plant.drag_coeff", format_number(lp.drag_coeff));
    line("plant.frontal_area", format_number(lp.frontal_area));
    line("plant.air_density", format_number(lp.air_density));
    line("plant.wheelbase", format_number(ap.wheelbase));
    line("plant.f_max", format_number(lp.f_max));
    line("plant.phi_max", format_number(ap.phi_max));
  } else {
    const auto& pp = cfg.pan_tilt.params;
    line("plant.inertia_pan", format_number(pp.inertia_pan));
    line("plant.inertia_tilt", format_number(pp.inertia_tilt));
    line("plant.damping_pan", format_number(pp.damping_pan));
    line("plant.damping_tilt", format_number(pp.damping_tilt));
    line("plant.torque_max", format_number(pp.torque_max));
    line("scenario.z", format_number(cfg.pan_tilt.z));
  }
}

LoopReport make_report(const RunVariant& v, const LoopTrace& trace,
                       const MetricsConfig& mc) {
  LoopReport rep;
  rep.run_id = v.id;
  rep.loop = trace.name;
  rep.controller = to_string(v.config.controller.type);
  rep.tau = v.config.controller.tau;
  rep.seed = v.config.controller.seed;
  const auto& recs = trace.records;
  if (recs.empty()) return rep;

  const double sp = recs.front().setpoint;
  const bool constant_setpoint = std::all_of(
      recs.begin(), recs.end(), [sp](const StepRecord& r) { return r.setpoint == sp; });
  if (constant_setpoint && recs.front().output != sp) {
    const ResponseMetrics m = compute_step_metrics(trace, sp, mc);
    rep.rise_time = m.rise_time;
    rep.settling_time = m.settling_time;
    rep.overshoot_pct = m.overshoot_pct;
    rep.steady_state_error = m.steady_state_error;
  } else {
    // Tracking loop: only the tail error average is meaningful of the step set.
    std::size_t n_win = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(mc.ss_window * static_cast<double>(recs.size()))));
    n_win = std::min(n_win, recs.size());
    double acc = 0.0;
    for (std::size_t i = recs.size() - n_win; i < recs.size(); ++i)
      acc += std::abs(recs[i].error);
    rep.steady_state_error = acc / static_cast<double>(n_win);
  }
  rep.rms_error = compute_rms_error(trace, mc);
  return rep;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string trace_csv(const RunVariant& variant, const LoopTrace& loop) {
  std::string out;
  out.reserve(loop.records.size() * 160 + 2048);
  append_provenance(out, variant, loop.name);
  out += kTraceColumns;
  out += "\n";
  for (const StepRecord& r : loop.records) {
    out += format_number(r.t);
    out += ',';
    out += format_number(r.setpoint);
    out += ',';
    out += format_number(r.output);
    out += ',';
    out += format_number(r.error);
    out += ',';
    out += format_number(r.control);
    out += ',';
    out += format_number(r.gains.kp);
    out += ',';
    out += format_number(r.gains.ki);
    out += ',';
    out += format_number(r.gains.kd);
    out += ',';
    out += format_number(r.rho[0]);
    out += ',';
    out += format_number(r.rho[1]);
    out += ',';
    out += format_number(r.rho[2]);
    out += '\n';
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result, const MetricsConfig& mc) {
  std::string out;
  out += std::string("# version=") + kVersion + "\n";
  out += "# rise_lo=" + format_number(mc.rise_lo) + "\n";
  out += "# rise_hi=" + format_number(mc.rise_hi) + "\n";
  out += "# settle_band=" + format_number(mc.settle_band) + "\n";
  out += "# ss_window=" + format_number(mc.ss_window) + "\n";
  out += "# rms_warmup=" + format_number(mc.rms_warmup) + "\n";
  out += "run,loop,controller,tau,seed,status,rise_time,settling_time,overshoot_pct,"
         "steady_state_error,rms_error\n";
  for (const LoopReport& r : result.reports) {
    out += r.run_id + "," + r.loop + "," + r.controller + "," + format_number(r.tau) + "," +
           std::to_string(r.seed) + "," + r.status + "," + csv_cell(r.rise_time) + "," +
           csv_cell(r.settling_time) + "," + csv_cell(r.overshoot_pct) + "," +
           csv_cell(r.steady_state_error) + "," + csv_cell(r.rms_error) + "\n";
  }
  return out;
}

namespace {

json report_row_json(const LoopReport& r) {
  json row;
  row["run"] = r.run_id;
  row["loop"] = r.loop;
  row["controller"] = r.controller;
  row["tau"] = r.tau;
  row["seed"] = r.seed;
  row["status"] = r.status;
  if (r.rise_time) row["rise_time"] = *r.rise_time;
  if (r.settling_time) row["settling_time"] = *r.settling_time;
  if (r.overshoot_pct) row["overshoot_pct"] = *r.overshoot_pct;
  if (r.steady_state_error) row["steady_state_error"] = *r.steady_state_error;
  if (r.rms_error) row["rms_error"] = *r.rms_error;
  return row;
}

}  // namespace

std::string summary_json(const ExperimentResult& result, const MetricsConfig& mc) {
  json j;
  j["version"] = kVersion;
  j["metrics_config"] = {{"rise_lo", mc.rise_lo},
                         {"rise_hi", mc.rise_hi},
                         {"settle_band", mc.settle_band},
                         {"ss_window", mc.ss_window},
                         {"rms_warmup", mc.rms_warmup}};
  json rows = json::array();
  for (const LoopReport& r : result.reports) rows.push_back(report_row_json(r));
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string metadata_json(const ExperimentSpec& spec, const ExperimentResult& result) {
  json j;
  j["version"] = kVersion;
  j["weight_init"] = kWeightInitScheme;
  j["hidden_activation"] = kHiddenActivation;
  j["config"] = json::parse(serialize_config(spec));
  json runs = json::array();
  for (const RunResult& r : result.runs) {
    json jr;
    jr["id"] = r.variant.id;
    jr["controller"] = to_string(r.variant.config.controller.type);
    jr["tau"] = r.variant.config.controller.tau;
    jr["seed"] = r.variant.config.controller.seed;
    jr["status"] = r.status;
    if (!r.detail.empty()) jr["detail"] = r.detail;
    runs.push_back(jr);
  }
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult result;
  for (RunVariant& variant : spec.enumerate_runs()) {
    RunResult rr;
    rr.variant = variant;
    try {
      Trajectory traj = run_scenario(variant.config);
      for (const LoopTrace& loop : traj.loops)
        result.reports.push_back(make_report(variant, loop, spec.metrics));
      rr.trajectory = std::move(traj);
    } catch (const DivergenceError& e) {
      rr.status = "diverged";
      rr.detail = e.what();
      LoopReport rep;
      rep.run_id = variant.id;
      rep.controller = to_string(variant.config.controller.type);
      rep.tau = variant.config.controller.tau;
      rep.seed = variant.config.controller.seed;
      rep.status = "diverged";
      const bool vehicle = variant.config.scenario == ScenarioType::kVehicle;
      for (const char* name : vehicle ? std::vector<const char*>{"steering", "speed"}
                                      : std::vector<const char*>{"pan", "tilt"}) {
        rep.loop = name;
        result.reports.push_back(rep);
      }
    }
    result.runs.push_back(std::move(rr));
  }
  return result;
}

ExperimentResult run_experiment_to_dir(const ExperimentSpec& spec) {
  ExperimentResult result = run_experiment(spec);

  const fs::path out_dir(spec.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  for (const RunResult& rr : result.runs) {
    if (!rr.trajectory) continue;
    for (const LoopTrace& loop : rr.trajectory->loops) {
      const fs::path path = out_dir / (rr.variant.id + "_" + loop.name + ".csv");
      write_file(path, trace_csv(rr.variant, loop));
    }
  }

  if (spec.report_format == "json")
    write_file(out_dir / "summary.json", summary_json(result, spec.metrics));
  else
    write_file(out_dir / "summary.csv", summary_csv(result, spec.metrics));
  write_file(out_dir / "metadata.json", metadata_json(spec, result));
  return result;
}

}  // namespace ecpid
