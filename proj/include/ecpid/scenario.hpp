#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecpid/controller.hpp"
#include "ecpid/integrators.hpp"
#include "ecpid/pid.hpp"
#include "ecpid/plants.hpp"
#include "ecpid/types.hpp"

namespace ecpid {

enum class ScenarioType { kVehicle, kPanTilt };
enum class ControllerType { kClassical, kEcPidunn };

/// Which variable the vehicle steering loop regulates. kHeading closes the
/// loop on the heading angle theta through the full kinematics; kSteeringAngle
/// closes it on phi alone (a pure integrator driven by the steering rate).
enum class SteeringMode { kHeading, kSteeringAngle };

enum class TargetKind { kStep, kSinusoid, kLine };

/// Per-scenario controller settings. Both loops of a scenario share tau,
/// rho0, seed and topology; only the baseline gains differ per loop.
struct ControllerConfig {
  ControllerType type = ControllerType::kEcPidunn;
  double tau = 2.0;
  double rho_scale = 0.1;
  Vec3d rho0 = Vec3d::Zero();
  std::uint64_t seed = 42;
  std::vector<int> topology = {6, 16, 16, 3};
  double i_max = 1e3;
  DeltaEpsMode delta_eps_mode = DeltaEpsMode::kControlFeedback;

  PidGains steering_gains;  // vehicle
  PidGains speed_gains;     // vehicle
  PidGains pan_gains;       // pan-tilt
  PidGains tilt_gains;      // pan-tilt
};

struct VehicleScenarioConfig {
  double v_target = 20.0;          // m/s
  double steering_target = 0.5;    // rad; heading or steering angle per mode
  SteeringMode steering_mode = SteeringMode::kHeading;
  double v0 = 0.0;
  double x0 = 0.0, y0 = 0.0, theta0 = 0.0, phi0 = 0.0;
  double steer_rate_max = 1.0;     // |u2| clamp (rad/s)
  AckermannParams ackermann;
  LongitudinalParams longitudinal;
};

/// Moving-target generator for the pan-tilt scenario. Step jumps to (x, y)
/// at t = 0; sinusoid traces x = R sin(w t), y = R cos(w t); line moves from
/// (x, y) with constant velocity (vx, vy).
struct PanTiltTargetConfig {
  TargetKind kind = TargetKind::kSinusoid;
  double radius = -1.0;  // sinusoid amplitude; < 0 means "use z"
  double omega = 0.5;    // rad/s
  double x = 0.0, y = 0.0;
  double vx = 0.0, vy = 0.0;

  // Target position at time t for a camera at depth z.
  std::pair<double, double> position(double t, double z) const;
};

struct PanTiltScenarioConfig {
  double z = 1.0;  // camera-to-target depth (m), > 0
  PanTiltTargetConfig target;
  PanTiltParams params;
  double theta0 = 0.0, theta_dot0 = 0.0, phi0 = 0.0, phi_dot0 = 0.0;
};

struct SimConfig {
  double dt = 1e-3;
  double duration = 20.0;
  Integrator integrator = Integrator::kRk4;
  ScenarioType scenario = ScenarioType::kVehicle;
  ControllerConfig controller;
  VehicleScenarioConfig vehicle;
  PanTiltScenarioConfig pan_tilt;

  void validate() const;
  std::size_t step_count() const;  // floor(duration / dt)
};

/// One recorded tick of one controlled loop.
struct StepRecord {
  double t = 0.0;
  double setpoint = 0.0;
  double output = 0.0;
  double error = 0.0;
  double control = 0.0;  // as applied to the plant (after clamping)
  PidGains gains;
  Vec3d rho = Vec3d::Zero();
};

struct LoopTrace {
  std::string name;
  std::vector<StepRecord> records;
};

struct Trajectory {
  SimConfig config;  // resolved configuration echo
  std::vector<LoopTrace> loops;

  const LoopTrace& loop(const std::string& name) const;
};

/// Thrown when a run blows up: a plant state went non-finite or beyond the
/// divergence guard. what() carries the offending time stamp.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& msg, double t_fail)
      : std::runtime_error(msg), t(t_fail) {}
  double t;
};

/// Builds one loop controller from the shared config, with the given
/// per-loop baseline gains and actuator range.
std::unique_ptr<LoopController> make_loop_controller(const ControllerConfig& cfg,
                                                     const PidGains& baseline, double dt,
                                                     double u_min, double u_max);

/// Dual-loop vehicle run: the speed loop commands drive force (clamped to
/// [0, f_max]) into the longitudinal dynamics, the steering loop commands a
/// steering rate (clamped to +-steer_rate_max) into the Ackermann kinematics
/// with the live v_car as forward speed. Produces loops "steering" and
/// "speed".
Trajectory run_vehicle_scenario(const SimConfig& cfg);

/// Pan-tilt tracking run: desired angles derived from the target position,
/// one controller per axis, torques clamped to +-torque_max. Produces loops
/// "pan" and "tilt".
Trajectory run_pan_tilt_scenario(const SimConfig& cfg);

Trajectory run_scenario(const SimConfig& cfg);

}  // namespace ecpid
