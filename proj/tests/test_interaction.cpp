#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "arago/constants.hpp"
#include "arago/errors.hpp"
#include "arago/farfield.hpp"
#include "arago/interaction.hpp"

using namespace arago;

namespace {

const ParticleSpecies kAu100{"Au100", 19700.0, 500e-30, 2.0, 0.0};
constexpr double kR = 500e-9;

// Sphere phase straight from the line integral over z, on a separate
// quadrature (double-exponential on [0, inf)).
double sphere_phase_oracle(double C4, double v, double R, double s) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [s](double z) {
    const double gap = std::hypot(s, z) - 1.0;
    return 1.0 / std::pow(gap, 4);
  };
  const double integral = integrator.integrate(f, 1e-13);
  return 2.0 * C4 * integral / (kConstants.hbar * v * std::pow(R, 3));
}

// Impact parameter at which the centrifugal barrier of
// V_eff(r) = E rho^2 / r^2 - C4 / (r - R)^4 just equals the kinetic energy.
double capture_radius_oracle(double C4, double mass_amu, double v, double R) {
  const double E = 0.5 * amu_to_kg(mass_amu) * v * v;
  auto barrier = [&](double rho) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20000; ++i) {
      const double gap = 1e-10 * std::pow(1e5, i / 20000.0);  // 0.1 nm .. 10 um
      const double r = R + gap;
      best = std::max(best, E * rho * rho / (r * r) - C4 / std::pow(gap, 4));
    }
    return best - E;
  };
  double lo = R, hi = 2.0 * R;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (barrier(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("interaction") {
  TEST_CASE("disc phase scaling and kick") {
    const double C4 = kAu100.C4();
    const double p1 = disc_phase(C4, 10e-9, 2.0, kR, 1.1);
    CHECK(disc_phase(C4, 10e-9, 2.0, kR, 1.2) == doctest::Approx(p1 / 16.0).epsilon(1e-12));
    CHECK(disc_phase(C4, 20e-9, 2.0, kR, 1.1) == doctest::Approx(2.0 * p1).epsilon(1e-12));
    CHECK(disc_phase(C4, 10e-9, 4.0, kR, 1.1) == doctest::Approx(p1 / 2.0).epsilon(1e-12));
    for (double s : {1.01, 1.1, 2.0}) {
      const double h = 1e-6 * (s - 1.0);
      const double fd = (disc_phase(C4, 10e-9, 2.0, kR, s + h) - disc_phase(C4, 10e-9, 2.0, kR, s - h)) / (2 * h);
      CHECK(disc_kick(C4, 10e-9, 2.0, kR, s) == doctest::Approx(kConstants.hbar * fd / kR).epsilon(1e-7));
      CHECK(disc_kick(C4, 10e-9, 2.0, kR, s) < 0.0);
    }
    CHECK_THROWS_AS(disc_phase(C4, 10e-9, 2.0, kR, 1.0), DomainError);
  }

  TEST_CASE("sphere phase against the direct line integral") {
    const double C4 = kAu100.C4();
    for (double s : {1.001, 1.01, 1.1, 1.5, 3.0, 20.0}) {
      CHECK(sphere_phase(C4, 2.0, kR, s) ==
            doctest::Approx(sphere_phase_oracle(C4, 2.0, kR, s)).epsilon(1e-8));
    }
  }

  TEST_CASE("sphere phase far asymptote") {
    const double C4 = kAu100.C4();
    const double scale = C4 / (kConstants.hbar * 2.0 * std::pow(kR, 3));
    for (double s : {300.0, 1000.0}) {
      const double leading = std::numbers::pi / 2.0 * scale / std::pow(s, 3);
      const double first_order = leading * (1.0 + 32.0 / (3.0 * std::numbers::pi * s));
      CHECK(sphere_phase(C4, 2.0, kR, s) == doctest::Approx(first_order).epsilon(1e-4));
    }
    const double slope = std::log(sphere_phase(C4, 2.0, kR, 2000.0) / sphere_phase(C4, 2.0, kR, 200.0)) /
                         std::log(10.0);
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.02));
  }

  TEST_CASE("phase table reproduces the direct phase") {
    const Obstacle sphere{ObstacleKind::sphere, kR, 0.0};
    const auto table = EikonalPhase::build(sphere, kAu100, 2.0);
    CHECK_FALSE(table.is_null());
    CHECK(table(table.s_negligible()) == doctest::Approx(table.phase_floor()).epsilon(1e-6));
    for (double s : {1.002, 1.03, 1.3, 2.5}) {
      CHECK(table(s) == doctest::Approx(sphere_phase(kAu100.C4(), 2.0, kR, s)).epsilon(1e-5));
      const double h = 1e-5 * (s - 1.0);
      CHECK(table.derivative(s) == doctest::Approx((table(s + h) - table(s - h)) / (2 * h)).epsilon(1e-5));
      CHECK(table.second_derivative(s) ==
            doctest::Approx((table.derivative(s + h) - table.derivative(s - h)) / (2 * h)).epsilon(1e-4));
    }
    CHECK_THROWS_AS(table(1.0), DomainError);

    const Obstacle disc{ObstacleKind::disc, kR, 10e-9};
    const auto disc_table = EikonalPhase::build(disc, kAu100, 2.0);
    for (double s : {1.0013, 1.07, 1.9}) {
      CHECK(disc_table(s) == doctest::Approx(disc_phase(kAu100.C4(), 10e-9, 2.0, kR, s)).epsilon(1e-9));
      CHECK(classical_kick(disc_table, s) ==
            doctest::Approx(disc_kick(kAu100.C4(), 10e-9, 2.0, kR, s)).epsilon(1e-7));
    }
  }

  TEST_CASE("no polarizability gives a null phase") {
    ParticleSpecies inert = kAu100;
    inert.alpha_m3 = 0.0;
    const auto table = EikonalPhase::build({ObstacleKind::sphere, kR, 0.0}, inert, 2.0);
    CHECK(table.is_null());
    CHECK(table(1.5) == 0.0);
    CHECK(capture_eta({ObstacleKind::sphere, kR, 0.0}, inert, 2.0) == 0.0);
  }

  TEST_CASE("trajectory fate") {
    CHECK(sphere_trajectory_captured(0.0, 19700.0, 2.0, kR, 0.5 * kR));
    CHECK_FALSE(sphere_trajectory_captured(0.0, 19700.0, 2.0, kR, 1.01 * kR));
    CHECK(sphere_trajectory_captured(kAu100.C4(), 19700.0, 2.0, kR, kR + 30e-9));
    CHECK_FALSE(sphere_trajectory_captured(kAu100.C4(), 19700.0, 2.0, kR, kR + 50e-9));
  }

  TEST_CASE("capture radii") {
    const double sphere = capture_eta({ObstacleKind::sphere, kR, 0.0}, kAu100, 2.0) * kR;
    CHECK(sphere == doctest::Approx(39e-9).epsilon(0.15));
    const double oracle = capture_radius_oracle(kAu100.C4(), 19700.0, 2.0, kR) - kR;
    CHECK(sphere == doctest::Approx(oracle).epsilon(0.03));

    const double disc = capture_eta({ObstacleKind::disc, kR, 10e-9}, kAu100, 2.0) * kR;
    CHECK(disc == doctest::Approx(cutoff_distance(kAu100.C4(), 10e-9, 19700.0, 2.0)).epsilon(1e-14));
    CHECK(disc == doctest::Approx(17e-9).epsilon(0.10));

    // Slower particles are captured from further out.
    CHECK(capture_eta({ObstacleKind::sphere, kR, 0.0}, kAu100, 1.0) * kR > sphere);
  }
}
