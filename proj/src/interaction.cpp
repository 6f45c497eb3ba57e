#include "arago/interaction.hpp"

#include <array>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "arago/constants.hpp"
#include "arago/errors.hpp"
#include "arago/farfield.hpp"

namespace arago {

struct EikonalPhase::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> log_phi;
};

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_outside(double s) {
  if (!(s > 1.0)) throw DomainError("s must exceed 1 (point inside the obstacle)");
}

// 2 * integral_0^{pi/2} s cos^2(t) / (s - cos t)^4 dt, the sphere path
// integral after substituting z = s R tan(t).
double sphere_path_integral(double s, const QuadratureSpec& quad) {
  QuadratureSpec spec = quad;
  spec.abs_tol = 1e-300;
  auto integrand = [s](double t) {
    const double c = std::cos(t);
    const double gap = s - c;
    return s * c * c / (gap * gap * gap * gap);
  };
  std::vector<double> breaks = {0.0};
  const double width = std::sqrt(2.0 * (s - 1.0));
  for (double scale : {1.0, 4.0, 16.0}) {
    const double t = scale * width;
    if (t < std::numbers::pi / 2 && t > breaks.back()) breaks.push_back(t);
  }
  breaks.push_back(std::numbers::pi / 2);
  const auto result = integrate_adaptive(integrand, std::span<const double>(breaks), spec);
  if (!result.converged) {
    throw NumericalError("sphere phase quadrature did not converge at s = " +
                         std::to_string(s));
  }
  return 2.0 * result.value;
}

}  // namespace

void Obstacle::validate() const {
  require_positive(R, "obstacle radius");
  if (kind == ObstacleKind::disc) require_positive(b, "disc thickness");
}

double disc_phase(double C4, double b, double v_z, double R, double s) {
  require_outside(s);
  require_positive(v_z, "velocity");
  require_positive(R, "radius");
  const double gap = s - 1.0;
  return C4 * b / (kConstants.hbar * v_z * std::pow(R, 4) * std::pow(gap, 4));
}

double disc_kick(double C4, double b, double v_z, double R, double s) {
  require_outside(s);
  require_positive(v_z, "velocity");
  require_positive(R, "radius");
  return -4.0 * C4 * b / (v_z * std::pow(R, 5) * std::pow(s - 1.0, 5));
}

double sphere_phase(double C4, double v_z, double R, double s,
                    const QuadratureSpec& quad) {
  require_outside(s);
  require_positive(v_z, "velocity");
  require_positive(R, "radius");
  return C4 / (kConstants.hbar * v_z * R * R * R) * sphere_path_integral(s, quad);
}

EikonalPhase EikonalPhase::build(const Obstacle& obstacle,
                                 const ParticleSpecies& particle, double v_z,
                                 const PhaseTableOptions& options,
                                 const QuadratureSpec& quad) {
  obstacle.validate();
  particle.validate();
  require_positive(v_z, "velocity");
  require_positive(options.phase_floor, "phase floor");
  require_positive(options.min_offset, "table offset");
  if (options.points < 4) throw DomainError("phase table needs >= 4 points");

  EikonalPhase phase;
  phase.obstacle_ = obstacle;
  phase.particle_ = particle;
  phase.v_z_ = v_z;
  phase.floor_ = options.phase_floor;
  const double C4 = particle.C4();
  if (C4 == 0.0) {
    phase.null_ = true;
    phase.s_min_ = 1.0;
    phase.s_max_ = std::numeric_limits<double>::infinity();
    phase.s_negligible_ = 1.0;
    return phase;
  }

  auto exact = [&](double s) {
    return obstacle.kind == ObstacleKind::disc
               ? disc_phase(C4, obstacle.b, v_z, obstacle.R, s)
               : sphere_phase(C4, v_z, obstacle.R, s, quad);
  };

  const double x_min = options.min_offset;
  double s_neg = 1.0 + x_min;
  if (exact(1.0 + x_min) > options.phase_floor) {
    double hi = 2.0;
    while (exact(hi) > options.phase_floor) hi = 1.0 + 2.0 * (hi - 1.0);
    s_neg = bisect([&](double s) { return std::log(exact(s) / options.phase_floor); },
                   1.0 + x_min, hi, 1e-10 * hi);
  }
  phase.s_negligible_ = s_neg;

  const double x_max =
      std::max({s_neg - 1.0, options.min_extent - 1.0, 4.0 * x_min});
  const int n = options.points;
  phase.log_x0_ = std::log(x_min);
  phase.log_step_ = (std::log(x_max) - phase.log_x0_) / (n - 1);
  phase.s_.resize(n);
  phase.phi_.resize(n);
  std::vector<double> log_phi(n);
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(phase.log_x0_ + i * phase.log_step_);
    phase.s_[i] = 1.0 + x;
    phase.phi_[i] = exact(phase.s_[i]);
    log_phi[i] = std::log(phase.phi_[i]);
  }
  // Pin the last node so s_max reproduces exactly.
  phase.s_min_ = phase.s_.front();
  phase.s_max_ = phase.s_.back();

  for (int i = 1; i < n; ++i) {
    if (!(phase.phi_[i] > 0.0 && phase.phi_[i] < phase.phi_[i - 1])) {
      throw NumericalError("eikonal phase table is not positive and decreasing");
    }
  }

  phase.spline_ = std::make_shared<const Spline>(Spline{
      boost::math::interpolators::cardinal_cubic_b_spline<double>(
          log_phi.data(), log_phi.size(), phase.log_x0_, phase.log_step_)});
  return phase;
}

void EikonalPhase::check_range(double s) const {
  require_outside(s);
  // Allow for roundoff at the end nodes.
  const double slack = 1e-12 * s_max_;
  if (s < s_min_ - slack || s > s_max_ + slack) {
    throw DomainError("s = " + std::to_string(s) + " outside the phase table [" +
                      std::to_string(s_min_) + ", " + std::to_string(s_max_) + "]");
  }
}

double EikonalPhase::operator()(double s) const {
  if (null_) return 0.0;
  check_range(s);
  return std::exp(spline_->log_phi(std::log(s - 1.0)));
}

double EikonalPhase::derivative(double s) const {
  if (null_) return 0.0;
  check_range(s);
  const double t = std::log(s - 1.0);
  return std::exp(spline_->log_phi(t)) * spline_->log_phi.prime(t) / (s - 1.0);
}

double EikonalPhase::second_derivative(double s) const {
  if (null_) return 0.0;
  check_range(s);
  const double x = s - 1.0;
  const double t = std::log(x);
  const double slope = spline_->log_phi.prime(t);
  return std::exp(spline_->log_phi(t)) *
         (slope * slope + spline_->log_phi.double_prime(t) - slope) / (x * x);
}

double classical_kick(const EikonalPhase& phase, double s) {
  return kConstants.hbar * phase.derivative(s) / phase.obstacle().R;
}

bool sphere_trajectory_captured(double C4, double mass_amu, double v_z, double R,
                                double rho, const TrajectoryOptions& options) {
  namespace odeint = boost::numeric::odeint;
  require_positive(v_z, "velocity");
  require_positive(R, "radius");
  if (C4 <= 0.0) return rho <= R;

  // Units: lengths in R, times in R / v_z.
  const double m = amu_to_kg(mass_amu);
  const double kappa = 4.0 * C4 / (m * v_z * v_z * std::pow(R, 4));
  const double margin = options.capture_margin / R;
  using State = std::array<double, 4>;  // x, z, vx, vz
  auto rhs = [kappa](const State& y, State& dy, double) {
    const double r = std::hypot(y[0], y[1]);
    const double gap = r - 1.0;
    const double a = -kappa / (gap * gap * gap * gap * gap) / r;
    dy = {y[2], y[3], a * y[0], a * y[1]};
  };

  const double start = options.start_distance;
  State y = {rho / R, -start, 0.0, 1.0};
  if (std::hypot(y[0], y[1]) - 1.0 <= margin) return true;
  auto stepper = odeint::make_controlled(1e-12, 1e-10,
                                         odeint::runge_kutta_dopri5<State>());
  double t = 0.0;
  double dt = 1e-2;
  const double t_max = 100.0 * start;
  int failures = 0;
  while (t < t_max) {
    if (stepper.try_step(rhs, y, t, dt) != odeint::success) {
      if (++failures > 100000) throw NumericalError("trajectory step size collapsed");
      continue;
    }
    const double r = std::hypot(y[0], y[1]);
    if (!(r - 1.0 > margin)) return true;
    const bool outgoing = y[0] * y[2] + y[1] * y[3] > 0.0;
    if (outgoing && r >= start) return false;
    // Keep steps small compared with the wall distance.
    dt = std::min(dt, 0.25 * (r - 1.0));
  }
  // Still bound after the time budget: orbiting at the critical parameter.
  return true;
}

double capture_eta(const Obstacle& obstacle, const ParticleSpecies& particle,
                   double v_z, const TrajectoryOptions& options) {
  obstacle.validate();
  particle.validate();
  require_positive(v_z, "velocity");
  const double C4 = particle.C4();
  if (C4 == 0.0) return 0.0;
  const double R = obstacle.R;
  if (obstacle.kind == ObstacleKind::disc) {
    return cutoff_distance(C4, obstacle.b, particle.mass_amu, v_z) / R;
  }
  auto captured = [&](double rho) {
    return sphere_trajectory_captured(C4, particle.mass_amu, v_z, R, rho, options);
  };
  double hi = 2.0 * R;
  while (captured(hi)) {
    hi = R + 2.0 * (hi - R);
    if (hi > options.start_distance * R) {
      throw NumericalError("capture radius exceeds the trajectory start distance");
    }
  }
  const double rho = bisect([&](double p) { return captured(p) ? -1.0 : 1.0; },
                            R, hi, options.tolerance);
  return rho / R - 1.0;
}

}  // namespace arago
