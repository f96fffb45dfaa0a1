#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ecpid/pid.hpp"

using namespace ecpid;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> random_errors(std::size_t n, std::uint64_t seed, double amp = 2.0) {
  std::mt19937_64 eng(seed);
  std::vector<double> out(n);
  for (auto& e : out)
    e = amp * (2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0);
  return out;
}

}  // namespace

TEST_CASE("classical: pure proportional") {
  PidState s(0.1);
  CHECK(classical_pid_step(s, {2.0, 0.0, 0.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("classical: zero error is a fixed point") {
  PidState s(0.01);
  const PidGains g{3.0, 2.0, 1.0};
  for (int i = 0; i < 100; ++i) CHECK(classical_pid_step(s, g, 0.0) == 0.0);
  CHECK(s.integral_acc == 0.0);
  CHECK(s.prev_control == 0.0);
}

TEST_CASE("classical: hand-accumulated integral sequence") {
  // dt = 0.1, gains (1,1,0), e = 1: integral grows 0.1 per step, so
  // u = 1 + 0.1k for k = 1..3.
  PidState s(0.1);
  const PidGains g{1.0, 1.0, 0.0};
  CHECK(classical_pid_step(s, g, 1.0) == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(classical_pid_step(s, g, 1.0) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(classical_pid_step(s, g, 1.0) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("classical: first-step derivative is zero") {
  PidState s(0.01);
  // Without priming, kd * (5 - 0)/0.01 would kick with 5000.
  CHECK(classical_pid_step(s, {0.0, 0.0, 10.0}, 5.0) == 0.0);
  // Second step sees the backward difference.
  CHECK(classical_pid_step(s, {0.0, 0.0, 10.0}, 6.0) ==
        doctest::Approx(10.0 * (6.0 - 5.0) / 0.01).epsilon(1e-12));
}

TEST_CASE("classical: rejects non-finite error") {
  PidState s(0.1);
  CHECK_THROWS_AS(classical_pid_step(s, {1, 0, 0}, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(classical_pid_step(s, {1, 0, 0}, kInf), std::invalid_argument);
}

TEST_CASE("state construction validates dt and i_max") {
  CHECK_THROWS_AS(PidState(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PidState(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(PidState(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("improved config validation") {
  CHECK_THROWS_AS(ImprovedPidConfig(0.0, 1e3, -kInf, kInf), std::invalid_argument);
  CHECK_THROWS_AS(ImprovedPidConfig(-2.0, 1e3, -kInf, kInf), std::invalid_argument);
  CHECK_THROWS_AS(ImprovedPidConfig(1.0, 0.0, -kInf, kInf), std::invalid_argument);
  CHECK_THROWS_AS(ImprovedPidConfig(1.0, 1e3, 1.0, -1.0), std::invalid_argument);
  CHECK_NOTHROW(ImprovedPidConfig(0.5, 1e3, -kInf, kInf));
}

TEST_CASE("improved at tau=1 equals classical on random sequences") {
  const auto errors = random_errors(5000, 7);
  PidState sc(0.005), si(0.005);
  const PidGains g{1.3, 0.7, 0.2};
  const ImprovedPidConfig cfg(1.0, 1e3, -kInf, kInf);
  for (double e : errors) {
    const double uc = classical_pid_step(sc, g, e);
    const double ui = improved_pid_step(si, g, cfg, e);
    CHECK(std::abs(uc - ui) <= 1e-12);
  }
}

TEST_CASE("improved: integral term scales by 1/tau on replayed state") {
  const auto errors = random_errors(2000, 11);
  for (double tau : {0.5, 2.0, 4.0}) {
    PidState ref(0.01), scaled(0.01);
    const PidGains g{0.0, 1.0, 0.0};
    const ImprovedPidConfig base(1.0, 1e3, -kInf, kInf);
    const ImprovedPidConfig cfg(tau, 1e3, -kInf, kInf);
    for (double e : errors) {
      const double u1 = improved_pid_step(ref, g, base, e);
      const double ut = improved_pid_step(scaled, g, cfg, e);
      CHECK(std::abs(ut - u1 / tau) <= 1e-12 * std::max(1.0, std::abs(u1)));
    }
  }
}

TEST_CASE("improved: derivative term scales by tau on replayed state") {
  const auto errors = random_errors(2000, 13);
  for (double tau : {0.5, 2.0, 4.0}) {
    PidState ref(0.01), scaled(0.01);
    const PidGains g{0.0, 0.0, 1.0};
    const ImprovedPidConfig base(1.0, 1e3, -kInf, kInf);
    const ImprovedPidConfig cfg(tau, 1e3, -kInf, kInf);
    for (double e : errors) {
      const double u1 = improved_pid_step(ref, g, base, e);
      const double ut = improved_pid_step(scaled, g, cfg, e);
      CHECK(std::abs(ut - tau * u1) <= 1e-12 * std::max(1.0, std::abs(u1)));
    }
  }
}

TEST_CASE("improved: hand-evaluated derivative with tau=2") {
  // errors 0 then 1 at dt = 0.1: backward difference 10, times tau*kd = 2.
  PidState s(0.1);
  const ImprovedPidConfig cfg(2.0, 1e3, -kInf, kInf);
  CHECK(improved_pid_step(s, {0, 0, 1}, cfg, 0.0) == 0.0);
  CHECK(improved_pid_step(s, {0, 0, 1}, cfg, 1.0) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("improved: zero error fixed point") {
  PidState s(0.01);
  const ImprovedPidConfig cfg(3.0, 1e3, -kInf, kInf);
  for (int i = 0; i < 100; ++i) CHECK(improved_pid_step(s, {2, 2, 2}, cfg, 0.0) == 0.0);
}

TEST_CASE("anti-windup bound holds for any error sequence") {
  const double i_max = 0.5;
  PidState s(0.1, i_max);
  const ImprovedPidConfig cfg(1.0, i_max, -kInf, kInf);
  for (double e : random_errors(3000, 17, 50.0)) {
    improved_pid_step(s, {0, 1, 0}, cfg, e);
    CHECK(std::abs(s.integral_acc) <= i_max);
  }
  s.reset();
  for (double e : random_errors(3000, 19, 50.0)) {
    classical_pid_step(s, {0, 1, 0}, e);
    CHECK(std::abs(s.integral_acc) <= i_max);
  }
}

TEST_CASE("windup clamp changes output under sustained saturation-scale error") {
  // With i_max tiny, the integral contribution freezes.
  PidState s(0.1, 0.2);
  const PidGains g{0.0, 1.0, 0.0};
  double u = 0.0;
  for (int i = 0; i < 50; ++i) u = classical_pid_step(s, g, 10.0);
  CHECK(u == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("improved: output saturation always respected") {
  PidState s(0.01);
  const ImprovedPidConfig cfg(1.5, 1e3, -0.75, 0.5);
  for (double e : random_errors(2000, 23, 100.0)) {
    const double u = improved_pid_step(s, {5, 5, 5}, cfg, e);
    CHECK(u <= 0.5);
    CHECK(u >= -0.75);
    CHECK(s.prev_control == u);  // stored feedback value is the saturated one
  }
}

TEST_CASE("dynamic_compute: identity at zero delta_eps for any rho") {
  const PidGains baseline{1.5, 2.5, 3.5};
  for (double r : {-100.0, -1.0, 0.0, 0.3, 42.0}) {
    const PidGains out = dynamic_compute(Vec3d(r, -r, r * 0.5), baseline, 0.0, 1e-3);
    CHECK(out.kp == baseline.kp);
    CHECK(out.ki == baseline.ki);
    CHECK(out.kd == baseline.kd);
  }
}

TEST_CASE("dynamic_compute: hand-evaluated perturbation") {
  const PidGains out = dynamic_compute(Vec3d(1, 1, 1), {1, 1, 1}, 0.1, 0.1);
  CHECK(out.kp == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(out.ki == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(out.kd == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dynamic_compute: clamps negative gains to zero") {
  const PidGains out = dynamic_compute(Vec3d(-10, 0, 0), {1, 1, 1}, 1.0, 1.0);
  CHECK(out.kp == 0.0);
  CHECK(out.ki == 1.0);
  CHECK(out.kd == 1.0);
}

TEST_CASE("dynamic_compute: all gains non-negative for random inputs") {
  std::mt19937_64 eng(29);
  auto u = [&] { return 20.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 10.0; };
  for (int i = 0; i < 2000; ++i) {
    const PidGains out = dynamic_compute(Vec3d(u(), u(), u()), {u(), u(), u()}, u(), 0.01);
    CHECK(out.kp >= 0.0);
    CHECK(out.ki >= 0.0);
    CHECK(out.kd >= 0.0);
  }
}

TEST_CASE("dynamic_compute: input validation") {
  CHECK_THROWS_AS(dynamic_compute(Vec3d::Zero(), {}, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dynamic_compute(Vec3d::Zero(), {}, std::nan(""), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(dynamic_compute(Vec3d(kInf, 0, 0), {}, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("reset clears accumulated state") {
  PidState s(0.1);
  classical_pid_step(s, {1, 1, 1}, 2.0);
  s.reset();
  CHECK(s.integral_acc == 0.0);
  CHECK(s.prev_error == 0.0);
  CHECK(s.prev_control == 0.0);
  CHECK_FALSE(s.primed);
  CHECK(s.dt == 0.1);  // dt survives reset
}
