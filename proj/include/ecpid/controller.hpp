#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ecpid/network.hpp"
#include "ecpid/pid.hpp"
#include "ecpid/types.hpp"

namespace ecpid {

/// How the error difference delta_eps is formed each tick.
///   kControlFeedback:  delta_eps = e_t - u_{t-1}   (the architecture's law)
///   kErrorDifference:  delta_eps = e_t - e_{t-1}   (experimental alternative)
enum class DeltaEpsMode { kControlFeedback, kErrorDifference };

/// Common interface the simulation loops drive. gains() and rho() report the
/// values used at the most recent step, for trace recording.
class LoopController {
 public:
  virtual ~LoopController() = default;
  virtual double step(double error) = 0;
  virtual PidGains gains() const = 0;
  virtual Vec3d rho() const = 0;
  virtual double prev_control() const = 0;
};

/// Fixed-gain classical PID wrapped in the loop interface.
class ClassicalPidController final : public LoopController {
 public:
  ClassicalPidController(const PidGains& gains, double dt, double i_max = 1e3)
      : gains_(gains), state_(dt, i_max) {}

  double step(double error) override { return classical_pid_step(state_, gains_, error); }
  PidGains gains() const override { return gains_; }
  Vec3d rho() const override { return Vec3d::Zero(); }
  double prev_control() const override { return state_.prev_control; }

  PidState& state() { return state_; }

 private:
  PidGains gains_;
  PidState state_;
};

/// Construction parameters for the EC-PIDUNN controller.
struct EcPidunnSettings {
  PidGains baseline;                        // (kp0, ki0, kd0)
  ImprovedPidConfig pid;                    // tau, i_max, saturation
  double dt = 1e-3;
  double rho_scale = 0.1;                   // rho component bound, >= 0
  Vec3d rho0 = Vec3d::Zero();
  std::vector<int> topology = {6, 16, 16, 3};
  std::uint64_t seed = 42;
  DeltaEpsMode delta_eps_mode = DeltaEpsMode::kControlFeedback;
};

/// Error-centric PID with an untrained network. Each tick:
///
///   1. delta_eps = e_t - u_{t-1}
///   2. I_rho = [e_t, u_{t-1}, delta_eps, rho_p, rho_i, rho_d]
///   3. rho   = network(I_rho)
///   4. gains = dynamic_compute(rho, baseline, delta_eps, dt)
///   5. u_t   = improved_pid_step(state, gains, cfg, e_t)
///   6. rho and u_{t-1} = u_t persist into the next tick
///
/// The rho produced at tick t drives the gains at tick t, not t+1.
class EcPidunnController final : public LoopController {
 public:
  explicit EcPidunnController(const EcPidunnSettings& s)
      : settings_(s),
        net_(init_network(s.topology, s.seed)),
        rho_(s.rho0),
        state_(s.dt, s.pid.i_max) {
    if (s.rho_scale < 0.0)
      throw std::invalid_argument("EcPidunnController: rho_scale must be >= 0");
    s.pid.validate();
    net_.output_scale = s.rho_scale;
  }

  double step(double error) override {
    detail::require_finite_error(error, "ec_pidunn_step");
    const double u_prev = state_.prev_control;
    const double delta_eps = (settings_.delta_eps_mode == DeltaEpsMode::kControlFeedback)
                                 ? error - u_prev
                                 : (state_.primed ? error - state_.prev_error : 0.0);
    Vec6d input;
    input << error, u_prev, delta_eps, rho_[0], rho_[1], rho_[2];
    rho_ = mlp_forward(net_, input);
    last_gains_ = dynamic_compute(rho_, settings_.baseline, delta_eps, state_.dt);
    return improved_pid_step(state_, last_gains_, settings_.pid, error);
  }

  PidGains gains() const override { return last_gains_; }
  Vec3d rho() const override { return rho_; }
  double prev_control() const override { return state_.prev_control; }

  const MlpNetwork& network() const { return net_; }
  MlpNetwork& network() { return net_; }
  const PidState& state() const { return state_; }
  const EcPidunnSettings& settings() const { return settings_; }

 private:
  EcPidunnSettings settings_;
  MlpNetwork net_;
  Vec3d rho_;
  PidState state_;
  PidGains last_gains_ = {};
};

/// Convenience free-function form of one EC-PIDUNN tick.
inline double ec_pidunn_step(EcPidunnController& ctrl, double error) {
  return ctrl.step(error);
}

}  // namespace ecpid
