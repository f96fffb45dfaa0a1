#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ecpid/types.hpp"

namespace ecpid {

/// Proportional / integral / derivative gains. Also used for the baseline
/// gains (kp0, ki0, kd0) that dynamic_compute perturbs.
struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

/// Discrete-time controller state shared by the classical and improved laws.
///
/// The integral is accumulated rectangularly (e * dt) and clamped to
/// [-i_max, +i_max]. The derivative is a backward difference on the error;
/// on the very first step prev_error is seeded with the observed error so
/// the derivative term starts at zero instead of kicking.
struct PidState {
  double integral_acc = 0.0;
  double prev_error = 0.0;
  double prev_control = 0.0;
  double dt = 1e-3;          // sample period, fixed for the state's lifetime
  double i_max = 1e3;        // anti-windup bound on |integral_acc|
  bool primed = false;       // becomes true after the first step

  PidState() = default;
  PidState(double dt_, double i_max_ = 1e3) : dt(dt_), i_max(i_max_) {
    if (!(dt > 0.0)) throw std::invalid_argument("PidState: dt must be > 0");
    if (!(i_max > 0.0)) throw std::invalid_argument("PidState: i_max must be > 0");
  }

  void reset() {
    integral_acc = 0.0;
    prev_error = 0.0;
    prev_control = 0.0;
    primed = false;
  }
};

/// Settings for the improved law: stabilizing factor tau plus saturation and
/// anti-windup bounds. tau = 0 would divide ki by zero, so it is rejected here
/// rather than at step time.
struct ImprovedPidConfig {
  double tau = 1.0;
  double i_max = 1e3;
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();

  ImprovedPidConfig() = default;
  ImprovedPidConfig(double tau_, double i_max_, double u_min_, double u_max_)
      : tau(tau_), i_max(i_max_), u_min(u_min_), u_max(u_max_) {
    validate();
  }

  void validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw std::invalid_argument("ImprovedPidConfig: tau must be finite and > 0");
    if (!(i_max > 0.0))
      throw std::invalid_argument("ImprovedPidConfig: i_max must be > 0");
    if (!(u_min < u_max))
      throw std::invalid_argument("ImprovedPidConfig: u_min must be < u_max");
  }
};

namespace detail {

inline void require_finite_error(double error, const char* who) {
  if (!std::isfinite(error)) {
    throw std::invalid_argument(std::string(who) + ": non-finite error input");
  }
}

// Shared discrete update: accumulate the clamped integral and form the
// backward-difference error derivative, priming prev_error on first use.
inline void advance_error_history(PidState& state, double error, double i_max,
                                  double& integral_out, double& deriv_out) {
  if (!state.primed) {
    state.prev_error = error;
    state.primed = true;
  }
  integral_out = std::clamp(state.integral_acc + error * state.dt, -i_max, i_max);
  deriv_out = (error - state.prev_error) / state.dt;
  state.integral_acc = integral_out;
  state.prev_error = error;
}

}  // namespace detail

/// Classical PID law: u = kp*e + ki*I + kd*de/dt, with I the clamped
/// rectangular integral. Mutates the state (integral, error history,
/// previous control).
inline double classical_pid_step(PidState& state, const PidGains& gains, double error) {
  detail::require_finite_error(error, "classical_pid_step");
  double integral = 0.0, deriv = 0.0;
  detail::advance_error_history(state, error, state.i_max, integral, deriv);
  const double u = gains.kp * error + gains.ki * integral + gains.kd * deriv;
  state.prev_control = u;
  return u;
}

/// Improved PID law with stabilizing factor tau:
///   u = kp*e + (ki/tau)*I + tau*kd*de/dt
/// then saturated to [u_min, u_max]. At tau = 1 with unbounded limits this is
/// exactly the classical law. The stored prev_control is the saturated output.
inline double improved_pid_step(PidState& state, const PidGains& gains,
                                const ImprovedPidConfig& cfg, double error) {
  detail::require_finite_error(error, "improved_pid_step");
  double integral = 0.0, deriv = 0.0;
  detail::advance_error_history(state, error, cfg.i_max, integral, deriv);
  const double u = gains.kp * error + (gains.ki / cfg.tau) * integral +
                   cfg.tau * gains.kd * deriv;
  const double u_sat = std::clamp(u, cfg.u_min, cfg.u_max);
  state.prev_control = u_sat;
  return u_sat;
}

/// Gain scheduling step: K_x = max(0, K_x0 + rho_x * delta_eps / dt).
/// The clamp at zero keeps a negative excursion of delta_eps from inverting
/// the feedback sign.
inline PidGains dynamic_compute(const Vec3d& rho, const PidGains& baseline,
                                double delta_eps, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dynamic_compute: dt must be > 0");
  if (!std::isfinite(delta_eps) || !rho.allFinite())
    throw std::invalid_argument("dynamic_compute: non-finite rho or delta_eps");
  const double rate = delta_eps / dt;
  PidGains out;
  out.kp = std::max(0.0, baseline.kp + rho[0] * rate);
  out.ki = std::max(0.0, baseline.ki + rho[1] * rate);
  out.kd = std::max(0.0, baseline.kd + rho[2] * rate);
  return out;
}

}  // namespace ecpid
