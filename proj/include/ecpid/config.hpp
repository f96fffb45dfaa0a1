#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecpid/metrics.hpp"
#include "ecpid/scenario.hpp"

namespace ecpid {

/// Validation failure while parsing a config document. path is the offending
/// key ("controller.tau"), also embedded in what().
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& msg)
      : std::runtime_error(key_path + ": " + msg), path(std::move(key_path)) {}
  std::string path;
};

/// Sweep axes. An empty vector means the axis is not swept and the base
/// value is used. Runs are enumerated controllers-major, then tau, then seed.
struct SweepSpec {
  std::vector<ControllerType> controllers;
  std::vector<double> taus;
  std::vector<std::uint64_t> seeds;

  bool empty() const { return controllers.empty() && taus.empty() && seeds.empty(); }
};

/// One enumerated run of an experiment.
struct RunVariant {
  std::string id;
  SimConfig config;
};

/// A fully resolved experiment: base scenario config with every default
/// materialized, plus sweep axes and output settings.
struct ExperimentSpec {
  SimConfig base;
  SweepSpec sweep;
  std::string out_dir = "out";
  std::string report_format = "csv";  // "csv" or "json"
  MetricsConfig metrics;

  std::vector<RunVariant> enumerate_runs() const;

  bool operator==(const ExperimentSpec& other) const;
  bool operator!=(const ExperimentSpec& other) const { return !(*this == other); }
};

/// Parses and validates a JSON config document. Unknown keys anywhere are
/// hard errors, as are out-of-range values; either way the thrown ConfigError
/// names the key path. The returned spec has all defaults filled in.
ExperimentSpec parse_config(const std::string& text);

/// Reads the file then delegates to parse_config.
ExperimentSpec load_config(const std::string& path);

/// Serializes a spec back to a JSON document with every value explicit.
/// parse_config(serialize_config(s)) == s.
std::string serialize_config(const ExperimentSpec& spec);

// Enum <-> string names used by the config schema and the CLI.
std::string to_string(ControllerType t);
std::string to_string(ScenarioType t);
std::string to_string(Integrator i);
std::string to_string(SteeringMode m);
std::string to_string(TargetKind k);
std::string to_string(DeltaEpsMode m);
ControllerType controller_type_from_string(const std::string& s);
ScenarioType scenario_type_from_string(const std::string& s);

}  // namespace ecpid
