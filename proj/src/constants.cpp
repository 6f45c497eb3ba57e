#include "arago/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "arago/errors.hpp"

namespace arago {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double amu_to_kg(double mass_amu) {
  require_positive(mass_amu, "mass");
  return mass_amu * kConstants.amu;
}

double kg_to_amu(double mass_kg) {
  require_positive(mass_kg, "mass");
  return mass_kg / kConstants.amu;
}

double polarizability_to_C4(double alpha_m3) {
  require_positive(alpha_m3, "polarizability volume");
  return 3.0 * kConstants.hbar * kConstants.c * alpha_m3 /
         (8.0 * std::numbers::pi);
}

}  // namespace arago
