#pragma once

#include <memory>
#include <span>
#include <vector>

#include "arago/numerics.hpp"
#include "arago/particles.hpp"

namespace arago {

enum class ObstacleKind { sphere, disc };

struct Obstacle {
  ObstacleKind kind = ObstacleKind::sphere;
  double R = 0.0;  // radius, m
  double b = 0.0;  // thickness, m (disc only)

  void validate() const;
};

/// Eikonal phase behind a thin disc: the flat-wall potential -C4/(r-R)^4 acts
/// for the transit time b/v_z. s = r/R > 1.
double disc_phase(double C4, double b, double v_z, double R, double s);

/// Radial derivative hbar d(phi)/dr of disc_phase, i.e. the classical kick in kg m/s.
double disc_kick(double C4, double b, double v_z, double R, double s);

/// Eikonal phase of a sphere in the tangential-wall approximation
/// V = -C4 / (|x| - R)^4, integrated along the straight path at distance s R
/// from the axis.
double sphere_phase(double C4, double v_z, double R, double s,
                    const QuadratureSpec& quad = {});

struct PhaseTableOptions {
  int points = 400;
  double phase_floor = 1e-4;      // rad; defines s_negligible
  double min_offset = 1e-3;       // first node at s = 1 + min_offset
  double min_extent = 0.0;        // table reaches at least this s
};

/// Tabulated eikonal phase phi(s) of one obstacle/particle/velocity triple.
///
/// Nodes are uniform in log(s - 1); log(phi) is interpolated with a cubic
/// B-spline in that variable, which is exact for the disc power law.
/// The table is immutable once built and can be shared between threads.
class EikonalPhase {
 public:
  static EikonalPhase build(const Obstacle& obstacle, const ParticleSpecies& particle,
                            double v_z, const PhaseTableOptions& options = {},
                            const QuadratureSpec& quad = {});

  /// phi(s); zero everywhere for a non-polarizable particle.
  double operator()(double s) const;
  /// d(phi)/ds.
  double derivative(double s) const;
  double second_derivative(double s) const;

  bool is_null() const noexcept { return null_; }
  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_max_; }
  double s_negligible() const noexcept { return s_negligible_; }
  double phase_floor() const noexcept { return floor_; }
  double v_z() const noexcept { return v_z_; }
  const Obstacle& obstacle() const noexcept { return obstacle_; }
  const ParticleSpecies& particle() const noexcept { return particle_; }
  std::span<const double> s_grid() const noexcept { return s_; }
  std::span<const double> values() const noexcept { return phi_; }

 private:
  struct Spline;

  EikonalPhase() = default;
  void check_range(double s) const;

  Obstacle obstacle_;
  ParticleSpecies particle_;
  double v_z_ = 0.0;
  bool null_ = false;
  double floor_ = 1e-4;
  double s_min_ = 1.0;
  double s_max_ = 1.0;
  double s_negligible_ = 1.0;
  double log_x0_ = 0.0;
  double log_step_ = 1.0;
  std::vector<double> s_;
  std::vector<double> phi_;
  std::shared_ptr<const Spline> spline_;
};

/// Classical radial momentum kick hbar d(phi)/dr (kg m/s). Negative values
/// point towards the obstacle.
double classical_kick(const EikonalPhase& phase, double s);

struct TrajectoryOptions {
  double start_distance = 20.0;   // in units of R, upstream and downstream
  double capture_margin = 0.5e-9; // m; closer approach counts as captured
  double tolerance = 1e-12;       // bisection width on the impact parameter, m
};

/// Fate of one classical trajectory incident parallel to the axis at
/// impact parameter `rho` (m) on a sphere of radius R in -C4/(r-R)^4.
bool sphere_trajectory_captured(double C4, double mass_amu, double v_z, double R,
                                double rho, const TrajectoryOptions& options = {});

/// Relative enlargement eta of the obstacle radius by particle capture.
///
/// Sphere: bisection on the impact parameter separating captured from
/// escaping trajectories. Disc: cutoff distance of the wall potential over
/// the disc thickness, divided by R.
double capture_eta(const Obstacle& obstacle, const ParticleSpecies& particle,
                   double v_z, const TrajectoryOptions& options = {});

}  // namespace arago
