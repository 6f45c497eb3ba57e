#pragma once

#include <string>
#include <vector>

namespace arago {

/// A beam particle: mass, static polarizability and longitudinal velocity
/// distribution.
struct ParticleSpecies {
  std::string name;
  double mass_amu = 0.0;
  double alpha_m3 = 0.0;  // polarizability volume
  double v_long = 0.0;    // most probable longitudinal velocity, m/s
  double dv_rel = 0.0;    // FWHM of the velocity distribution over v_long

  /// Throws DomainError unless mass > 0, alpha >= 0, v_long > 0, 0 <= dv_rel < 1.
  void validate() const;

  double mass_kg() const;
  /// Casimir-Polder C4 in J m^4; zero for a non-polarizable particle.
  double C4() const;
  double wavelength() const;
};

double de_broglie_wavelength(double mass_amu, double v);
double thermal_velocity(double mass_amu, double temperature);
double thermal_wavelength(double mass_amu, double temperature);

struct VelocityNode {
  double v;
  double weight;
};

/// Quadrature nodes over the longitudinal velocity distribution.
///
/// The distribution is a Gaussian centred on v_long with standard deviation
/// dv_rel * v_long / 2.355 (dv_rel read as a FWHM), truncated to v > 0.
/// Nodes are Gauss-Hermite; nodes at v <= 0 are dropped and the remaining
/// weights renormalised to sum to one. dv_rel == 0 yields the single node
/// {v_long, 1}.
std::vector<VelocityNode> velocity_nodes(const ParticleSpecies& particle,
                                         int count);

}  // namespace arago
