#include "ecpid/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace ecpid {

namespace {

constexpr double kDivergenceGuard = 1e9;

void check_finite(double value, const char* what, double t) {
  if (!std::isfinite(value) || std::abs(value) > kDivergenceGuard) {
    throw DivergenceError(std::string(what) + " diverged at t=" + std::to_string(t), t);
  }
}

void record(LoopTrace& trace, double t, double setpoint, double output, double control,
            const LoopController& ctrl) {
  StepRecord r;
  r.t = t;
  r.setpoint = setpoint;
  r.output = output;
  r.error = setpoint - output;
  r.control = control;
  r.gains = ctrl.gains();
  r.rho = ctrl.rho();
  trace.records.push_back(r);
}

}  // namespace

std::pair<double, double> PanTiltTargetConfig::position(double t, double z) const {
  switch (kind) {
    case TargetKind::kStep:
      return {x, y};
    case TargetKind::kSinusoid: {
      const double r = radius < 0.0 ? z : radius;
      return {r * std::sin(omega * t), r * std::cos(omega * t)};
    }
    case TargetKind::kLine:
      return {x + vx * t, y + vy * t};
  }
  throw std::logic_error("PanTiltTargetConfig: unknown target kind");
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
  if (!(duration > 0.0)) throw std::invalid_argument("SimConfig: duration must be > 0");
  if (dt > duration) throw std::invalid_argument("SimConfig: dt must be <= duration");
  if (!(controller.tau > 0.0))
    throw std::invalid_argument("SimConfig: controller.tau must be > 0");
  if (controller.rho_scale < 0.0)
    throw std::invalid_argument("SimConfig: controller.rho_scale must be >= 0");
  if (!(controller.i_max > 0.0))
    throw std::invalid_argument("SimConfig: controller.i_max must be > 0");
  if (scenario == ScenarioType::kVehicle) {
    const auto& v = vehicle;
    if (!(v.ackermann.wheelbase > 0.0))
      throw std::invalid_argument("SimConfig: wheelbase must be > 0");
    if (!(v.ackermann.phi_max > 0.0) || v.ackermann.phi_max >= M_PI / 2 - 1e-3)
      throw std::invalid_argument("SimConfig: phi_max must be in (0, pi/2)");
    if (!(v.longitudinal.mass > 0.0))
      throw std::invalid_argument("SimConfig: vehicle mass must be > 0");
    if (!(v.longitudinal.f_max > 0.0))
      throw std::invalid_argument("SimConfig: f_max must be > 0");
    if (!(v.steer_rate_max > 0.0))
      throw std::invalid_argument("SimConfig: steer_rate_max must be > 0");
    if (std::abs(v.phi0) > v.ackermann.phi_max)
      throw std::invalid_argument("SimConfig: |phi0| must be <= phi_max");
  } else {
    const auto& p = pan_tilt;
    if (!(p.z > 0.0)) throw std::invalid_argument("SimConfig: pan_tilt z must be > 0");
    if (!(p.params.inertia_pan > 0.0) || !(p.params.inertia_tilt > 0.0))
      throw std::invalid_argument("SimConfig: pan-tilt inertias must be > 0");
    if (p.params.damping_pan < 0.0 || p.params.damping_tilt < 0.0)
      throw std::invalid_argument("SimConfig: pan-tilt damping must be >= 0");
    if (!(p.params.torque_max > 0.0))
      throw std::invalid_argument("SimConfig: torque_max must be > 0");
  }
}

std::size_t SimConfig::step_count() const {
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

const LoopTrace& Trajectory::loop(const std::string& name) const {
  for (const auto& l : loops)
    if (l.name == name) return l;
  throw std::out_of_range("Trajectory: no loop named " + name);
}

std::unique_ptr<LoopController> make_loop_controller(const ControllerConfig& cfg,
                                                     const PidGains& baseline, double dt,
                                                     double u_min, double u_max) {
  if (cfg.type == ControllerType::kClassical)
    return std::make_unique<ClassicalPidController>(baseline, dt, cfg.i_max);
  EcPidunnSettings s;
  s.baseline = baseline;
  s.pid = ImprovedPidConfig(cfg.tau, cfg.i_max, u_min, u_max);
  s.dt = dt;
  s.rho_scale = cfg.rho_scale;
  s.rho0 = cfg.rho0;
  s.topology = cfg.topology;
  s.seed = cfg.seed;
  s.delta_eps_mode = cfg.delta_eps_mode;
  return std::make_unique<EcPidunnController>(s);
}

Trajectory run_vehicle_scenario(const SimConfig& cfg) {
  cfg.validate();
  const auto& vc = cfg.vehicle;
  const double dt = cfg.dt;
  const std::size_t n_steps = cfg.step_count();

  auto steering = make_loop_controller(cfg.controller, cfg.controller.steering_gains, dt,
                                       -vc.steer_rate_max, vc.steer_rate_max);
  auto speed = make_loop_controller(cfg.controller, cfg.controller.speed_gains, dt, 0.0,
                                    vc.longitudinal.f_max);

  Trajectory traj;
  traj.config = cfg;
  traj.loops.resize(2);
  traj.loops[0].name = "steering";
  traj.loops[1].name = "speed";
  traj.loops[0].records.reserve(n_steps + 1);
  traj.loops[1].records.reserve(n_steps + 1);

  Vec4d s;
  s << vc.x0, vc.y0, vc.theta0, vc.phi0;
  double v_car = vc.v0;

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    const double steer_meas =
        cfg.vehicle.steering_mode == SteeringMode::kHeading ? s[ack::kTheta] : s[ack::kPhi];
    const double e_steer = vc.steering_target - steer_meas;
    const double e_speed = vc.v_target - v_car;

    const double u2 = std::clamp(steering->step(e_steer), -vc.steer_rate_max, vc.steer_rate_max);
    const double force = std::clamp(speed->step(e_speed), 0.0, vc.longitudinal.f_max);

    record(traj.loops[0], t, vc.steering_target, steer_meas, u2, *steering);
    record(traj.loops[1], t, vc.v_target, v_car, force, *speed);

    if (k == n_steps) break;

    // Zero-order hold: u1 is the speed at the start of the tick.
    const double u1 = v_car;
    s = integrate_step(
        [&](const Vec4d& q) { return ackermann_derivatives(q, vc.ackermann, u1, u2); }, s, dt,
        cfg.integrator);
    s[ack::kPhi] = std::clamp(s[ack::kPhi], -vc.ackermann.phi_max, vc.ackermann.phi_max);
    v_car = integrate_step(
        [&](double v) { return longitudinal_derivative(v, vc.longitudinal, force); }, v_car, dt,
        cfg.integrator);

    const double t_next = static_cast<double>(k + 1) * dt;
    for (int i = 0; i < 4; ++i) check_finite(s[i], "vehicle state", t_next);
    check_finite(v_car, "vehicle speed", t_next);
  }
  return traj;
}

Trajectory run_pan_tilt_scenario(const SimConfig& cfg) {
  cfg.validate();
  const auto& pc = cfg.pan_tilt;
  const double dt = cfg.dt;
  const std::size_t n_steps = cfg.step_count();
  const double tq = pc.params.torque_max;

  auto pan = make_loop_controller(cfg.controller, cfg.controller.pan_gains, dt, -tq, tq);
  auto tilt = make_loop_controller(cfg.controller, cfg.controller.tilt_gains, dt, -tq, tq);

  Trajectory traj;
  traj.config = cfg;
  traj.loops.resize(2);
  traj.loops[0].name = "pan";
  traj.loops[1].name = "tilt";
  traj.loops[0].records.reserve(n_steps + 1);
  traj.loops[1].records.reserve(n_steps + 1);

  Vec4d s;
  s << pc.theta0, pc.theta_dot0, pc.phi0, pc.phi_dot0;

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const auto [x_t, y_t] = pc.target.position(t, pc.z);
    const auto [theta_d, phi_d] = pan_tilt_desired_angles(x_t, y_t, pc.z);

    const double e_pan = theta_d - s[pt::kTheta];
    const double e_tilt = phi_d - s[pt::kPhi];

    const double tau_pan = std::clamp(pan->step(e_pan), -tq, tq);
    const double tau_tilt = std::clamp(tilt->step(e_tilt), -tq, tq);

    record(traj.loops[0], t, theta_d, s[pt::kTheta], tau_pan, *pan);
    record(traj.loops[1], t, phi_d, s[pt::kPhi], tau_tilt, *tilt);

    if (k == n_steps) break;

    s = integrate_step(
        [&](const Vec4d& q) { return pan_tilt_derivatives(q, pc.params, tau_pan, tau_tilt); }, s,
        dt, cfg.integrator);

    const double t_next = static_cast<double>(k + 1) * dt;
    for (int i = 0; i < 4; ++i) check_finite(s[i], "pan-tilt state", t_next);
  }
  return traj;
}

Trajectory run_scenario(const SimConfig& cfg) {
  return cfg.scenario == ScenarioType::kVehicle ? run_vehicle_scenario(cfg)
                                                : run_pan_tilt_scenario(cfg);
}

}  // namespace ecpid
