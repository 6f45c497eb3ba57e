#include "arago/farfield.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "arago/constants.hpp"
#include "arago/errors.hpp"

namespace arago {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Non-strict bounds accept values equal to the bound up to roundoff.
constexpr double kRoundoff = 1e-12;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_angle(double value, const char* what) {
  if (!(value >= 0.0 && value < std::numbers::pi / 2)) {
    throw DomainError(std::string(what) + " must lie in [0, pi/2)");
  }
}

std::string sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", value);
  return buffer;
}

double wavelength_for(const FarFieldSetup& setup, const ParticleSpecies& particle) {
  return setup.wavelength ? *setup.wavelength : particle.wavelength();
}

}  // namespace

void FarFieldSetup::validate() const {
  require_positive(D, "D");
  require_positive(Y, "Y");
  require_positive(L1, "L1");
  require_positive(L2, "L2");
  require_positive(d, "d");
  require_positive(b, "b");
  require_positive(slit_open, "slit_open");
  require_positive(Theta, "Theta");
  require_positive(H, "H");
  require_positive(T_source, "T_source");
  require_positive(tau, "tau");
  require_positive(N_target, "N_target");
  require_positive(particle_density, "particle_density");
  require_angle(Theta, "Theta");
  require_angle(eps1, "eps1");
  require_angle(eps2, "eps2");
  require_angle(eps3, "eps3");
  require_angle(latitude, "latitude");
  if (!(eta_trans > 0.0 && eta_trans <= 1.0)) {
    throw DomainError("eta_trans must lie in (0, 1]");
  }
  if (wavelength) require_positive(*wavelength, "wavelength");
}

ConstraintReport make_report(std::string name, double value, double bound,
                             Direction direction, std::string note) {
  bool ok = true;
  switch (direction) {
    case Direction::less: ok = value < bound; break;
    case Direction::less_equal: ok = value <= bound + kRoundoff * std::abs(bound); break;
    case Direction::greater: ok = value > bound; break;
    case Direction::greater_equal: ok = value >= bound - kRoundoff * std::abs(bound); break;
    case Direction::info: ok = true; break;
  }
  return {std::move(name), value, bound, direction, ok, std::move(note)};
}

double cutoff_distance(double C4, double b, double mass_amu, double v) {
  require_positive(C4, "C4");
  require_positive(b, "thickness");
  require_positive(v, "velocity");
  const double m = amu_to_kg(mass_amu);
  return std::pow(18.0 * C4 * b * b / (m * v * v), 1.0 / 6.0);
}

double mass_limit(double d, double temperature, double Theta) {
  require_positive(d, "grating period");
  require_positive(temperature, "temperature");
  require_positive(Theta, "collimation angle");
  const double h = kConstants.h;
  return h * h / (2.0 * d * d * kConstants.kB * temperature * Theta * Theta);
}

double mass_limit_as_printed(double d, double temperature, double Theta) {
  return mass_limit(d, temperature, Theta) * Theta;
}

double gravity_velocity_criterion(const FarFieldSetup& setup,
                                  const ParticleSpecies& particle,
                                  GravityLength convention) {
  particle.validate();
  require_positive(setup.d, "grating period");
  require_positive(setup.L2, "L2");
  if (setup.eps1 == 0.0) return kInf;
  const double L = convention == GravityLength::L2_only ? setup.L2
                                                        : setup.L1 + setup.L2;
  const double v = particle.v_long;
  return v * setup.L2 * kConstants.h /
         (particle.mass_kg() * setup.d * kConstants.g * L * L * setup.eps1);
}

double coriolis_shift(double v_L, double t, double eps2, double eps3,
                      double latitude) {
  if (t < 0.0) throw DomainError("flight time must be non-negative");
  const double g = kConstants.g;
  const double t2 = t * t;
  return -2.0 * kConstants.omega_earth *
         (v_L * t2 * eps2 * std::sin(latitude) / 2.0 +
          (v_L * t2 / 2.0 - g * t2 * t / 3.0) * eps3 * std::cos(latitude));
}

double coriolis_flight_time(double v_L, double H) {
  require_positive(v_L, "velocity");
  require_positive(H, "height");
  const double g = kConstants.g;
  const double disc = v_L * v_L / (g * g) - 2.0 * H / g;
  if (disc < 0.0) {
    throw DomainError("particle does not reach height H (v_L^2 < 2 g H)");
  }
  return v_L / g - std::sqrt(disc);
}

CoriolisCriterion coriolis_velocity_criterion(const FarFieldSetup& setup,
                                              const ParticleSpecies& particle) {
  particle.validate();
  const double g = kConstants.g;
  const double v = particle.v_long;
  const double m = particle.mass_kg();
  const double H = setup.H;
  const double phi = setup.latitude;

  CoriolisCriterion out;
  const double t = coriolis_flight_time(v, H);
  out.flight_time = t;

  const double prefactor = kConstants.h * H / (m * v * v * setup.d);
  out.printed_eps2 = (v + g * t) / (v - g * t) * std::sin(phi) / prefactor;
  out.printed_eps3 = std::cos(phi) / prefactor;

  // Slope of the shift with respect to v_L, flight time following v_L.
  auto shift = [&](double vl, double e2, double e3) {
    return coriolis_shift(vl, coriolis_flight_time(vl, H), e2, e3, phi);
  };
  const double step = 1e-6 * v;
  auto slope = [&](double e2, double e3) {
    return (shift(v + step, e2, e3) - shift(v - step, e2, e3)) / (2.0 * step);
  };
  const double fringe = kConstants.h * H / (setup.d * m * v);
  out.derived_eps2 = v * slope(1.0, 0.0) / fringe;
  out.derived_eps3 = v * slope(0.0, 1.0) / fringe;

  const double printed_bracket =
      out.printed_eps2 * setup.eps2 + out.printed_eps3 * setup.eps3;
  const double derived_bracket =
      std::abs(out.derived_eps2 * setup.eps2 + out.derived_eps3 * setup.eps3);
  out.printed = printed_bracket == 0.0 ? kInf : 1.0 / printed_bracket;
  out.derived = derived_bracket == 0.0 ? kInf : 1.0 / derived_bracket;
  return out;
}

double coherence_width(double wavelength, double L1, double D) {
  require_positive(wavelength, "wavelength");
  require_positive(L1, "L1");
  require_positive(D, "D");
  return wavelength * L1 / D;
}

ConstraintReport collimation_check(double Theta, double wavelength, double d) {
  require_positive(Theta, "collimation angle");
  require_positive(wavelength, "wavelength");
  require_positive(d, "grating period");
  const double diffraction_angle = wavelength / d;
  return make_report("collimation", Theta, diffraction_angle, Direction::less,
                     "Theta < lambda/d; diffraction angle " + sci(diffraction_angle) +
                         " rad");
}

double required_flux(const FarFieldSetup& setup, const ParticleSpecies& particle) {
  particle.validate();
  if (particle.dv_rel == 0.0) {
    throw DomainError("required flux diverges for a zero velocity spread");
  }
  const double v = particle.v_long;
  const double dv = particle.dv_rel * v;
  return setup.N_target * setup.L1 * setup.L1 * v /
         (setup.D * setup.D * setup.Y * setup.Y * setup.eta_trans * setup.tau * dv);
}

double free_fall_distance(double L_total, double v_L) {
  require_positive(L_total, "flight length");
  require_positive(v_L, "velocity");
  const double t = L_total / v_L;
  return 0.5 * kConstants.g * t * t;
}

double particle_diameter(double mass_amu, double density) {
  require_positive(density, "density");
  const double volume = amu_to_kg(mass_amu) / density;
  return std::cbrt(6.0 * volume / std::numbers::pi);
}

std::vector<ConstraintReport> feasibility_report(const FarFieldSetup& setup,
                                                 const ParticleSpecies& particle) {
  std::vector<ConstraintReport> reports;
  auto guarded = [&reports](const std::string& name, auto&& build) {
    try {
      reports.push_back(build());
    } catch (const std::exception& e) {
      reports.push_back({name, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(), Direction::info,
                         false, std::string("error: ") + e.what()});
    }
  };

  guarded("setup", [&] {
    setup.validate();
    particle.validate();
    return make_report("setup", 0.0, 0.0, Direction::info, "setup and particle valid");
  });

  guarded("particle_size", [&] {
    const double size = particle_diameter(particle.mass_amu, setup.particle_density);
    return make_report("particle_size", size, setup.d, Direction::less,
                       "diameter at density " + sci(setup.particle_density) +
                           " kg/m^3 vs grating period");
  });

  guarded("collimation", [&] {
    return collimation_check(setup.Theta, wavelength_for(setup, particle), setup.d);
  });

  guarded("coherence_width", [&] {
    const double width =
        coherence_width(wavelength_for(setup, particle), setup.L1, setup.D);
    return make_report("coherence_width", width, setup.d, Direction::greater_equal,
                       "lambda L1 / D must span two neighbouring slits");
  });

  guarded("mass_limit", [&] {
    const double limit = mass_limit(setup.d, setup.T_source, setup.Theta);
    return make_report(
        "mass_limit", particle.mass_kg(), limit, Direction::less,
        "h^2/(2 d^2 kB T Theta^2) = " + sci(kg_to_amu(limit)) +
            " amu; one-line printed form h^2/(2 d^2 kB T Theta) = " +
            sci(mass_limit_as_printed(setup.d, setup.T_source, setup.Theta)));
  });

  guarded("cutoff_distance", [&] {
    const double C4 = particle.C4();
    const double xc =
        C4 > 0.0 ? cutoff_distance(C4, setup.b, particle.mass_amu, particle.v_long)
                 : 0.0;
    return make_report("cutoff_distance", xc, 0.0, Direction::info,
                       "particles closer than this to a slit wall are adsorbed");
  });

  guarded("effective_slit_width", [&] {
    const double C4 = particle.C4();
    const double xc =
        C4 > 0.0 ? cutoff_distance(C4, setup.b, particle.mass_amu, particle.v_long)
                 : 0.0;
    return make_report("effective_slit_width", setup.slit_open - 2.0 * xc, 0.0,
                       Direction::greater, "slit opening minus twice the cutoff distance");
  });

  guarded("gravity_velocity_spread", [&] {
    const double bound = gravity_velocity_criterion(setup, particle);
    return make_report("gravity_velocity_spread", particle.dv_rel, bound,
                       Direction::less_equal, "L = L2 convention");
  });

  guarded("coriolis_velocity_spread", [&] {
    const auto c = coriolis_velocity_criterion(setup, particle);
    return make_report("coriolis_velocity_spread", particle.dv_rel, c.derived,
                       Direction::less_equal,
                       "bound 1/(" + sci(c.derived_eps2) + " eps2 + " +
                           sci(c.derived_eps3) + " eps3) from d y_c/d v_L; printed form gives " +
                           sci(c.printed));
  });

  const double L_total = setup.L1 + setup.L2;
  guarded("transit_time", [&] {
    return make_report("transit_time", L_total / particle.v_long, 0.0, Direction::info,
                       "(L1 + L2) / v");
  });
  guarded("fall_distance", [&] {
    return make_report("fall_distance", free_fall_distance(L_total, particle.v_long),
                       0.0, Direction::info, "g t^2 / 2 over the total flight");
  });
  guarded("required_flux", [&] {
    const double flux = required_flux(setup, particle);
    return make_report("required_flux", flux, 0.0, Direction::info,
                       sci(flux * 1e-4) + " cm^-2 s^-1 sr^-1");
  });
  return reports;
}

}  // namespace arago
