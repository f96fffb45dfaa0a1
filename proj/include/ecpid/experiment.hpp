#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecpid/config.hpp"
#include "ecpid/metrics.hpp"
#include "ecpid/scenario.hpp"

namespace ecpid {

/// Filesystem failure while writing artifacts; what() names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One summary row: metrics for one loop of one run. Step metrics are filled
/// only for constant setpoints with a nonzero span; rms is filled whenever the
/// run completed. A diverged run keeps every field absent (status tells why).
struct LoopReport {
  std::string run_id;
  std::string loop;
  std::string controller;
  double tau = 1.0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // "ok" or "diverged"
  std::optional<double> rise_time;
  std::optional<double> settling_time;
  std::optional<double> overshoot_pct;
  std::optional<double> steady_state_error;
  std::optional<double> rms_error;
};

struct RunResult {
  RunVariant variant;
  std::string status = "ok";
  std::string detail;                    // divergence diagnostic when not ok
  std::optional<Trajectory> trajectory;  // absent when diverged
};

struct ExperimentResult {
  std::vector<RunResult> runs;
  std::vector<LoopReport> reports;

  bool any_diverged() const;
};

/// Simulates every run in the sweep. Divergence in one run is contained in
/// its RunResult and does not abort the siblings. No filesystem effects.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// run_experiment plus artifacts under spec.out_dir: one <run>_<loop>.csv per
/// completed loop, summary.csv or summary.json per report_format, and
/// metadata.json with the resolved config and per-run status.
ExperimentResult run_experiment_to_dir(const ExperimentSpec& spec);

/// Decimal text with 12 significant digits; the one formatter used for every
/// numeric CSV cell, so reruns are byte-identical.
std::string format_number(double v);

/// Trace CSV for one loop: '#' provenance lines (version, run, dt, tau, seed,
/// topology, plant parameters), then the fixed column header, then one row
/// per tick.
std::string trace_csv(const RunVariant& variant, const LoopTrace& loop);

std::string summary_csv(const ExperimentResult& result, const MetricsConfig& metrics_cfg);
std::string summary_json(const ExperimentResult& result, const MetricsConfig& metrics_cfg);
std::string metadata_json(const ExperimentSpec& spec, const ExperimentResult& result);

inline constexpr const char* kTraceColumns =
    "t,setpoint,output,error,control,kp,ki,kd,rho_p,rho_i,rho_d";

}  // namespace ecpid
