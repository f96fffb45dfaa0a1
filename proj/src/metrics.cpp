#include "ecpid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecpid {

ResponseMetrics compute_step_metrics(const LoopTrace& trace, double setpoint,
                                     const MetricsConfig& cfg) {
  const auto& rec = trace.records;
  if (rec.empty()) throw std::invalid_argument("compute_step_metrics: empty trace");

  const double y0 = rec.front().output;
  const double span = setpoint - y0;
  if (span == 0.0)
    throw std::invalid_argument("compute_step_metrics: setpoint equals initial output");
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double abs_span = std::abs(span);

  ResponseMetrics m;

  // Rise time: first crossings of the lo/hi fractions of the span, measured
  // as normalized progress toward the setpoint.
  std::optional<double> t_lo, t_hi;
  for (const auto& r : rec) {
    const double progress = (r.output - y0) / span;
    if (!t_lo && progress >= cfg.rise_lo) t_lo = r.t;
    if (!t_hi && progress >= cfg.rise_hi) t_hi = r.t;
    if (t_hi) break;
  }
  if (t_lo && t_hi) m.rise_time = *t_hi - *t_lo;

  // Settling time: earliest t after which every sample stays inside the
  // band, i.e. the time of the last out-of-band sample (0 when none exists).
  // Absent when the final sample is still outside.
  const double band = cfg.settle_band * abs_span;
  std::ptrdiff_t last_outside = -1;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(rec.size()) - 1; i >= 0; --i) {
    if (std::abs(rec[i].output - setpoint) > band) {
      last_outside = i;
      break;
    }
  }
  if (last_outside < 0) {
    m.settling_time = 0.0;
  } else if (last_outside + 1 < static_cast<std::ptrdiff_t>(rec.size())) {
    m.settling_time = rec[last_outside].t;
  }

  // Overshoot: worst excursion past the setpoint in the step direction.
  double worst = 0.0;
  for (const auto& r : rec) worst = std::max(worst, (r.output - setpoint) * dir);
  m.overshoot_pct = 100.0 * worst / abs_span;

  // Steady-state error: mean |setpoint - y| over the trailing window.
  const std::size_t n = rec.size();
  const std::size_t n_win = std::min(
      n, std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.ss_window * n))));
  double acc = 0.0;
  for (std::size_t i = n - n_win; i < n; ++i) acc += std::abs(setpoint - rec[i].output);
  m.steady_state_error = acc / static_cast<double>(n_win);

  return m;
}

double compute_rms_error(const LoopTrace& trace, const MetricsConfig& cfg) {
  const auto& rec = trace.records;
  if (rec.empty()) throw std::invalid_argument("compute_rms_error: empty trace");

  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& r : rec) {
    if (r.t < cfg.rms_warmup) continue;
    const double e = r.setpoint - r.output;
    acc += e * e;
    ++n;
  }
  if (n == 0) {  // trace shorter than the warm-up window
    for (const auto& r : rec) {
      const double e = r.setpoint - r.output;
      acc += e * e;
      ++n;
    }
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace ecpid
