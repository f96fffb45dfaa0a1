#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ecpid/types.hpp"

namespace ecpid {

// ---------------------------------------------------------------------------
// Ackermann steering kinematics
//
// State vector layout: [x, y, theta, phi]
//   x, y   position of the rear-axle midpoint (m)
//   theta  heading (rad), kept unwrapped during integration
//   phi    virtual front wheel steering angle (rad), |phi| <= phi_max
// ---------------------------------------------------------------------------

namespace ack {
inline constexpr int kX = 0;
inline constexpr int kY = 1;
inline constexpr int kTheta = 2;
inline constexpr int kPhi = 3;
}  // namespace ack

template <typename Scalar>
struct AckermannParamsT {
  Scalar wheelbase = Scalar(2.5);   // L (m), > 0
  Scalar phi_max = Scalar(0.6);     // steering actuator limit (rad)
};
using AckermannParams = AckermannParamsT<double>;

template <typename Scalar>
using AckermannState = Vec4<Scalar>;

/// d/dt [x, y, theta, phi] with forward speed u1 and steering rate u2:
///   dx = u1 cos(theta), dy = u1 sin(theta),
///   dtheta = u1 tan(phi) / L, dphi = u2.
/// phi is kept away from pi/2 by the actuator limit; the assert guards the
/// tan singularity in debug builds.
template <typename Scalar>
Vec4<Scalar> ackermann_derivatives(const Vec4<Scalar>& s, const AckermannParamsT<Scalar>& p,
                                   Scalar u1, Scalar u2) {
  using std::cos, std::sin, std::tan, std::abs;
  assert(abs(s[ack::kPhi]) < Scalar(M_PI / 2) - Scalar(1e-3));
  Vec4<Scalar> d;
  d[ack::kX] = u1 * cos(s[ack::kTheta]);
  d[ack::kY] = u1 * sin(s[ack::kTheta]);
  d[ack::kTheta] = u1 * tan(s[ack::kPhi]) / p.wheelbase;
  d[ack::kPhi] = u2;
  return d;
}

/// Wraps an angle to (-pi, pi]; used at reporting time only.
inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

// ---------------------------------------------------------------------------
// Longitudinal vehicle dynamics with aerodynamic drag
// ---------------------------------------------------------------------------

template <typename Scalar>
struct LongitudinalParamsT {
  Scalar mass = Scalar(1200);         // m (kg), > 0
  Scalar drag_coeff = Scalar(0.3);    // C_d
  Scalar frontal_area = Scalar(2.2);  // A (m^2)
  Scalar air_density = Scalar(1.225); // rho_air (kg/m^3)
  Scalar f_max = Scalar(4000);        // drive force saturation (N)
};
using LongitudinalParams = LongitudinalParamsT<double>;

/// dv/dt = (F - 1/2 C_d A rho_air v^2) / m. The caller saturates F to
/// [0, f_max]; there is drive force and drag only, no braking.
template <typename Scalar>
Scalar longitudinal_derivative(Scalar v_car, const LongitudinalParamsT<Scalar>& p, Scalar force) {
  const Scalar drag = Scalar(0.5) * p.drag_coeff * p.frontal_area * p.air_density * v_car * v_car;
  return (force - drag) / p.mass;
}

/// Speed at which drag balances a constant drive force.
template <typename Scalar>
Scalar terminal_velocity(const LongitudinalParamsT<Scalar>& p, Scalar force) {
  using std::sqrt;
  return sqrt(Scalar(2) * force / (p.drag_coeff * p.frontal_area * p.air_density));
}

// ---------------------------------------------------------------------------
// Pan-tilt mechanism
//
// State vector layout: [theta, theta_dot, phi, phi_dot]
//   theta pan angle (rad), phi tilt angle (rad)
// ---------------------------------------------------------------------------

namespace pt {
inline constexpr int kTheta = 0;
inline constexpr int kThetaDot = 1;
inline constexpr int kPhi = 2;
inline constexpr int kPhiDot = 3;
}  // namespace pt

template <typename Scalar>
struct PanTiltParamsT {
  Scalar inertia_pan = Scalar(0.05);   // I_theta (kg m^2), > 0
  Scalar inertia_tilt = Scalar(0.05);  // I_phi (kg m^2), > 0
  Scalar damping_pan = Scalar(0.1);    // b_theta (N m s)
  Scalar damping_tilt = Scalar(0.1);   // b_phi (N m s)
  Scalar torque_max = Scalar(2.0);     // per-axis torque saturation (N m)
};
using PanTiltParams = PanTiltParamsT<double>;

template <typename Scalar>
using PanTiltState = Vec4<Scalar>;

/// I theta'' + b theta' = tau per axis, the two axes fully decoupled:
///   theta'' = (tau_pan - b_theta theta') / I_theta
///   phi''   = (tau_tilt - b_phi phi') / I_phi
template <typename Scalar>
Vec4<Scalar> pan_tilt_derivatives(const Vec4<Scalar>& s, const PanTiltParamsT<Scalar>& p,
                                  Scalar tau_pan, Scalar tau_tilt) {
  Vec4<Scalar> d;
  d[pt::kTheta] = s[pt::kThetaDot];
  d[pt::kThetaDot] = (tau_pan - p.damping_pan * s[pt::kThetaDot]) / p.inertia_pan;
  d[pt::kPhi] = s[pt::kPhiDot];
  d[pt::kPhiDot] = (tau_tilt - p.damping_tilt * s[pt::kPhiDot]) / p.inertia_tilt;
  return d;
}

/// Angles that center a target at (x_t, y_t) seen from depth z > 0:
///   theta_d = arctan(x_t / z), phi_d = arctan(y_t / z).
template <typename Scalar>
std::pair<Scalar, Scalar> pan_tilt_desired_angles(Scalar x_t, Scalar y_t, Scalar z) {
  using std::atan;
  assert(z > Scalar(0));
  return {atan(x_t / z), atan(y_t / z)};
}

}  // namespace ecpid
