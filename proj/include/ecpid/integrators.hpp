#pragma once

#include <stdexcept>
#include <utility>

namespace ecpid {

enum class Integrator { kEuler, kRk4 };

/// Forward Euler: s + dt * f(s). Works for Eigen vectors and plain scalars.
template <typename State, typename Deriv>
State euler_step(Deriv&& f, const State& s, double dt) {
  const State k1 = f(s);
  return s + dt * k1;
}

/// Classical fourth-order Runge-Kutta. The derivative callable captures any
/// control inputs, so they are held constant across all four stages
/// (zero-order hold).
template <typename State, typename Deriv>
State rk4_step(Deriv&& f, const State& s, double dt) {
  const State k1 = f(s);
  const State k2 = f(State(s + (0.5 * dt) * k1));
  const State k3 = f(State(s + (0.5 * dt) * k2));
  const State k4 = f(State(s + dt * k3));
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename State, typename Deriv>
State integrate_step(Deriv&& f, const State& s, double dt, Integrator method) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_step: dt must be > 0");
  switch (method) {
    case Integrator::kEuler:
      return euler_step(std::forward<Deriv>(f), s, dt);
    case Integrator::kRk4:
      return rk4_step(std::forward<Deriv>(f), s, dt);
  }
  throw std::logic_error("integrate_step: unknown method");
}

}  // namespace ecpid
