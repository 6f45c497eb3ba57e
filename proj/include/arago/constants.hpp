#pragma once

#include <numbers>

namespace arago {

/// SI values of the physical constants used throughout the library.
///
/// Everything inside the library is SI. Masses enter the public API in
/// atomic mass units and are converted with amu_to_kg at the boundary.
struct PhysicalConstants {
  double h = 6.62607015e-34;            // J s
  double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);  // J s
  double kB = 1.380649e-23;             // J / K
  double c = 299792458.0;               // m / s
  double g = 9.81;                      // m / s^2
  double omega_earth = 7.3e-5;          // rad / s
  double amu = 1.66053906660e-27;       // kg
};

inline constexpr PhysicalConstants kConstants{};

/// Mass in atomic mass units to kilograms.
double amu_to_kg(double mass_amu);

/// Inverse of amu_to_kg.
double kg_to_amu(double mass_kg);

/// C4 coefficient (J m^4) of the asymptotic Casimir-Polder wall potential
/// V(x) = -C4 / x^4.
///
/// `alpha` is a polarizability *volume* in m^3 (Gaussian convention, i.e. the
/// value usually quoted in cubic Angstrom times 1e-30). With that convention
/// C4 = 3 hbar c alpha / (8 pi) carries units of J m^4 without a 4 pi eps0
/// factor.
double polarizability_to_C4(double alpha_m3);

/// Cubic Angstrom to m^3.
constexpr double cubic_angstrom(double value) { return value * 1e-30; }

}  // namespace arago
