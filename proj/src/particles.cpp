#include "arago/particles.hpp"

#include <cmath>
#include <numbers>

#include "arago/constants.hpp"
#include "arago/errors.hpp"
#include "arago/numerics.hpp"

namespace arago {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

constexpr double kFwhmToSigma = 1.0 / 2.355;

}  // namespace

void ParticleSpecies::validate() const {
  require_positive(mass_amu, "particle mass");
  require_positive(v_long, "particle velocity");
  if (!(alpha_m3 >= 0.0) || !std::isfinite(alpha_m3)) {
    throw DomainError("polarizability must be non-negative");
  }
  if (!(dv_rel >= 0.0 && dv_rel < 1.0)) {
    throw DomainError("relative velocity spread must lie in [0, 1)");
  }
}

double ParticleSpecies::mass_kg() const { return amu_to_kg(mass_amu); }

double ParticleSpecies::C4() const {
  return alpha_m3 > 0.0 ? polarizability_to_C4(alpha_m3) : 0.0;
}

double ParticleSpecies::wavelength() const {
  return de_broglie_wavelength(mass_amu, v_long);
}

double de_broglie_wavelength(double mass_amu, double v) {
  require_positive(v, "velocity");
  return kConstants.h / (amu_to_kg(mass_amu) * v);
}

double thermal_velocity(double mass_amu, double temperature) {
  require_positive(temperature, "temperature");
  return std::sqrt(2.0 * kConstants.kB * temperature / amu_to_kg(mass_amu));
}

double thermal_wavelength(double mass_amu, double temperature) {
  require_positive(temperature, "temperature");
  return kConstants.h /
         std::sqrt(2.0 * kConstants.kB * temperature * amu_to_kg(mass_amu));
}

std::vector<VelocityNode> velocity_nodes(const ParticleSpecies& particle,
                                         int count) {
  particle.validate();
  if (count < 1) throw DomainError("velocity node count must be >= 1");
  if (particle.dv_rel == 0.0 || count == 1) {
    return {{particle.v_long, 1.0}};
  }
  const double sigma = particle.dv_rel * particle.v_long * kFwhmToSigma;
  const auto rule = gauss_hermite(count);
  std::vector<VelocityNode> nodes;
  double total = 0.0;
  for (const auto& [x, w] : rule) {
    const double v = particle.v_long + std::numbers::sqrt2 * sigma * x;
    if (v <= 0.0) continue;
    nodes.push_back({v, w});
    total += w;
  }
  for (auto& node : nodes) node.weight /= total;
  return nodes;
}

}  // namespace arago
