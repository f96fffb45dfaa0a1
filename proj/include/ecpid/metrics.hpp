#pragma once

#include <optional>

#include "ecpid/scenario.hpp"

namespace ecpid {

/// Thresholds behind the step metrics. Conventions: 10-90% rise, +-2%
/// settling band, steady-state error over the final 5% of samples, RMS after
/// a 1 s warm-up. All overridable per call.
struct MetricsConfig {
  double rise_lo = 0.10;
  double rise_hi = 0.90;
  double settle_band = 0.02;   // fraction of |span|
  double ss_window = 0.05;     // trailing fraction of samples
  double rms_warmup = 1.0;     // seconds skipped before the RMS window
};

/// Step-response summary. rise_time and settling_time are absent when the
/// response never crossed the relevant thresholds; they are never encoded as
/// sentinel numbers.
struct ResponseMetrics {
  std::optional<double> rise_time;      // s, 10% -> 90% of the step span
  std::optional<double> settling_time;  // s, earliest t with all later samples in band
  double overshoot_pct = 0.0;           // % of |span|, in the step direction
  double steady_state_error = 0.0;      // mean |setpoint - y| over the tail window
  std::optional<double> rms_tracking_error;  // filled by tracking scenarios
};

/// Metrics for a step response recorded in `trace`, against the final
/// commanded value. The initial output (first sample) must differ from the
/// setpoint, otherwise the step span is undefined and the call throws.
ResponseMetrics compute_step_metrics(const LoopTrace& trace, double setpoint,
                                     const MetricsConfig& cfg = {});

/// Root-mean-square of (setpoint - output) over all samples at or after the
/// warm-up time. Falls back to the whole trace when it is shorter than the
/// warm-up.
double compute_rms_error(const LoopTrace& trace, const MetricsConfig& cfg = {});

}  // namespace ecpid
