#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arago/particles.hpp"

namespace arago {

/// Geometry and operating conditions of a grating (far-field) experiment.
/// Lengths in m, angles in rad, times in s, temperature in K.
struct FarFieldSetup {
  double D = 4e-6;          // collimation slit width
  double Y = 100e-6;        // slit height
  double L1 = 1.0;          // source to grating
  double L2 = 1.0;          // grating to screen
  double d = 100e-9;        // grating period
  double b = 100e-9;        // grating thickness
  double slit_open = 50e-9; // open width of one grating slit
  double Theta = 4e-6;      // collimation angle
  double eps1 = 0.0;        // grating bars vs gravity
  double eps2 = 0.0;        // beam vs gravity
  double eps3 = 0.0;        // grating bars vs x axis
  double latitude = 0.0;
  double H = 1.0;           // vertical flight height
  double T_source = 600.0;
  double eta_trans = 1.0 / 3.0;
  double tau = 3600.0;
  double N_target = 1000.0;
  double particle_density = 2e4;  // kg/m^3, upper bound used for size estimates
  /// Quoted wavelength that overrides h/(m v) in wavelength-driven checks.
  std::optional<double> wavelength;

  void validate() const;
};

enum class Direction { less, less_equal, greater, greater_equal, info };

struct ConstraintReport {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Direction direction = Direction::info;
  bool satisfied = true;
  std::string note;
};

/// Builds a report whose `satisfied` flag follows from value, bound and direction.
ConstraintReport make_report(std::string name, double value, double bound,
                             Direction direction, std::string note = {});

/// Distance from a wall within which a particle crossing a slab of thickness
/// b is adsorbed: (18 C4 b^2 / (m v^2))^(1/6).
double cutoff_distance(double C4, double b, double mass_amu, double v);

/// Largest mass (kg) for which the thermal transverse momentum stays below
/// the diffraction kick: h^2 / (2 d^2 kB T Theta^2).
double mass_limit(double d, double temperature, double Theta);

/// The one-line closed form h^2 / (2 d^2 kB T Theta) exactly as it is usually
/// quoted. Kept for comparison; it is not dimensionally a mass.
double mass_limit_as_printed(double d, double temperature, double Theta);

/// Which length plays the role of L in the gravity criterion.
enum class GravityLength { L2_only, L1_plus_L2 };

/// Largest Delta v / v for which gravity shifts two velocity classes by less
/// than one fringe: v L2 h / (m d g L^2 eps1). eps1 == 0 gives +infinity.
double gravity_velocity_criterion(const FarFieldSetup& setup,
                                  const ParticleSpecies& particle,
                                  GravityLength convention = GravityLength::L2_only);

/// Coriolis displacement along the grating vector after flight time t.
double coriolis_shift(double v_L, double t, double eps2, double eps3,
                      double latitude);

/// Time to climb a height H for a vertical launch at v_L against gravity.
/// Throws DomainError if v_L^2 < 2 g H.
double coriolis_flight_time(double v_L, double H);

/// Both forms of the Coriolis velocity-selection bound, each written as
/// 1 / (coeff_eps2 * eps2 + coeff_eps3 * eps3).
struct CoriolisCriterion {
  double flight_time = 0.0;
  double printed = 0.0;       // closed form as quoted
  double printed_eps2 = 0.0;
  double printed_eps3 = 0.0;
  double derived = 0.0;       // from d y_c / d v_L by central differences
  double derived_eps2 = 0.0;
  double derived_eps3 = 0.0;
};

CoriolisCriterion coriolis_velocity_criterion(const FarFieldSetup& setup,
                                              const ParticleSpecies& particle);

double coherence_width(double wavelength, double L1, double D);

/// Theta < lambda / d (strict). The report carries the diffraction angle as bound.
ConstraintReport collimation_check(double Theta, double wavelength, double d);

/// Particle flux (m^-2 s^-1 sr^-1) needed to collect N_target particles.
double required_flux(const FarFieldSetup& setup, const ParticleSpecies& particle);

double free_fall_distance(double L_total, double v_L);

/// Diameter of a sphere of the given mass at the given density.
double particle_diameter(double mass_amu, double density);

/// Full audit of every far-field constraint. Individual failures are recorded
/// in the affected report instead of aborting the audit.
std::vector<ConstraintReport> feasibility_report(const FarFieldSetup& setup,
                                                 const ParticleSpecies& particle);

}  // namespace arago
