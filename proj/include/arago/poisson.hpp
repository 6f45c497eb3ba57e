#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "arago/farfield.hpp"
#include "arago/interaction.hpp"
#include "arago/numerics.hpp"
#include "arago/particles.hpp"

namespace arago {

/// Near-field geometry: point-like pinhole of radius R0 at z = 0, obstacle at
/// z = L1, screen at z = L1 + L2. Lengths in m.
struct PoissonSetup {
  double R0 = 0.0;
  double L1 = 0.125;
  double L2 = 0.125;
  Obstacle obstacle{ObstacleKind::disc, 500e-9, 10e-9};
  ParticleSpecies particle;
  /// Wavelength at particle.v_long that overrides h/(m v) when set.
  std::optional<double> wavelength;

  double R() const noexcept { return obstacle.R; }
  /// de Broglie wavelength at velocity v (defaults to v_long).
  double wavelength_at(double v) const;
  double wavelength_at() const { return wavelength_at(particle.v_long); }

  /// Throws DomainError for invalid lengths or when R0 >= R (L1 + L2) / L2,
  /// in which case the screen has no shadow region at all.
  void validate() const;
  /// Non-fatal notes where the paraxial ratios R/L1, R/L2, R0/L1 exceed 0.01.
  std::vector<std::string> paraxial_warnings() const;
};

/// k = R^2 / (L2 lambda), ell = (L1 + L2) / L1, beta = (L2 / L1)(R0 / R).
struct DimensionlessParams {
  double k = 0.0;
  double ell = 0.0;
  double beta = 0.0;

  void validate() const;
  static DimensionlessParams from_setup(const PoissonSetup& setup, double wavelength);
  static DimensionlessParams from_setup(const PoissonSetup& setup) {
    return from_setup(setup, setup.wavelength_at());
  }
};

enum class Model { quantum, classical, ideal };
std::string to_string(Model model);

struct ProfileMeta {
  std::string setup_hash;
  Model model = Model::ideal;
  bool source_averaged = false;
  bool velocity_averaged = false;
  bool converged = true;
  /// Classical point source focusing onto the axis: w(0) holds the value at
  /// the first non-zero node and origin_coefficient the fitted c of w ~ c / u.
  bool divergent_origin = false;
  double origin_coefficient = 0.0;
  int caustics = 0;
  std::string notes;
};

/// Radial intensity profile normalised to the obstacle-free density.
struct RadialProfile {
  std::vector<double> u;
  std::vector<double> w;
  ProfileMeta meta;
};

struct AmplitudeResult {
  std::complex<double> value;
  double error = 0.0;
  bool converged = true;
};

/// Interaction seen by the amplitude: the eikonal phase (null for none) and
/// the capture parameter eta. Integration starts at s = 1 + eta, or at the
/// first table node if that lies further out.
struct Interaction {
  const EikonalPhase* phase = nullptr;
  double eta = 0.0;

  double start() const;
};

/// Amplitude psi(u) = int_1^inf ds 2 pi k ell s exp(i pi k ell s^2 + i phi(s)) J0(2 pi k u s).
///
/// Evaluated as  i exp(-i pi k u^2 / ell)            (phi = 0, integral from 0)
///             - int_0^{s0} bare integrand
///             + int_{s0}^{s_negligible} bare integrand * (exp(i phi) - 1)
/// so that only finite intervals are ever integrated.
AmplitudeResult amplitude(double u, const DimensionlessParams& params,
                          const Interaction& interaction = {},
                          const QuadratureSpec& quad = {});

struct PatternOptions {
  QuadratureSpec quad;
  int source_samples = 64;    // Gauss-Legendre nodes over the source offset
  int angular_samples = 256;  // uniform nodes over the offset direction
  int velocity_nodes = 9;
  int threads = 1;
};

/// Uniform grid of `points` radii on [0, u_max].
std::vector<double> uniform_grid(double u_max, int points);

/// w_p(u) = |psi(u)|^2 on the grid.
RadialProfile point_source_pattern(std::span<const double> u_grid,
                                   const DimensionlessParams& params,
                                   const Interaction& interaction = {},
                                   const PatternOptions& options = {});

/// Average of w_p over a uniformly illuminated source disc whose image on the
/// screen has radius beta = params.beta. beta == 0 returns the point pattern.
RadialProfile source_averaged_pattern(std::span<const double> u_grid,
                                      const DimensionlessParams& params,
                                      const Interaction& interaction = {},
                                      const PatternOptions& options = {});

/// What to include when rebuilding the pattern at a given velocity.
struct InteractionSettings {
  bool enabled = true;   // false: ideal obstacle, phi = 0
  bool capture = true;   // start the amplitude integral at 1 + eta
  PhaseTableOptions table;
  TrajectoryOptions trajectory;
};

/// Source-averaged pattern further averaged over the particle's velocity
/// distribution. k, the eikonal phase and the capture parameter are rebuilt
/// at every velocity node; dv_rel == 0 reduces to a single wavelength.
RadialProfile wavelength_averaged_pattern(std::span<const double> u_grid,
                                          const PoissonSetup& setup,
                                          const InteractionSettings& interaction,
                                          const PatternOptions& options = {});

/// Estimated spot radius 0.4 / k in units of R.
double spot_radius(const DimensionlessParams& params);

/// First local minimum of w(u) beyond u = 0, refined by a parabola through
/// the three bracketing nodes. Empty if the profile has no interior minimum.
std::optional<double> first_minimum(const RadialProfile& profile);

/// Visibility and geometry checks of a near-field setup.
std::vector<ConstraintReport> visibility_checks(const PoissonSetup& setup);

/// Stable hexadecimal digest of every setup parameter.
std::string setup_hash(const PoissonSetup& setup);

}  // namespace arago
