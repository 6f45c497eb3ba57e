#include "arago/poisson.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "arago/constants.hpp"
#include "arago/errors.hpp"
#include "arago/parallel.hpp"

namespace arago {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;
// Largest phase advance allotted to one initial quadrature panel.
constexpr double kPanelPhase = kPi / 2;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

std::string fixed(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string short_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.4g", value);
  return buffer;
}

void append_uniform(std::vector<double>& breaks, double a, double b, double phase) {
  const int pieces = std::max(1, static_cast<int>(std::ceil(phase / kPanelPhase)));
  for (int j = 1; j <= pieces; ++j) {
    breaks.push_back(j == pieces ? b : a + (b - a) * j / pieces);
  }
}

}  // namespace

double PoissonSetup::wavelength_at(double v) const {
  require_positive(v, "velocity");
  if (wavelength) return *wavelength * particle.v_long / v;
  return de_broglie_wavelength(particle.mass_amu, v);
}

void PoissonSetup::validate() const {
  obstacle.validate();
  particle.validate();
  require_positive(L1, "L1");
  require_positive(L2, "L2");
  if (!(R0 >= 0.0) || !std::isfinite(R0)) {
    throw DomainError("source radius R0 must be non-negative");
  }
  if (wavelength) require_positive(*wavelength, "wavelength");
  const double shadow_limit = R() * (L1 + L2) / L2;
  if (!(R0 < shadow_limit)) {
    throw DomainError("source radius R0 = " + short_number(R0) +
                      " m leaves no shadow region (needs R0 < R (L1 + L2) / L2 = " +
                      short_number(shadow_limit) + " m)");
  }
}

std::vector<std::string> PoissonSetup::paraxial_warnings() const {
  std::vector<std::string> warnings;
  auto check = [&](double ratio, const char* label) {
    if (ratio > 0.01) {
      warnings.push_back(std::string(label) + " = " + short_number(ratio) +
                         " exceeds 0.01; paraxial approximation questionable");
    }
  };
  check(R() / L1, "R/L1");
  check(R() / L2, "R/L2");
  check(R0 / L1, "R0/L1");
  check(R0 / L2, "R0/L2");
  return warnings;
}

void DimensionlessParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive");
  if (!(ell > 1.0) || !std::isfinite(ell)) throw DomainError("ell must exceed 1");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be >= 0");
}

DimensionlessParams DimensionlessParams::from_setup(const PoissonSetup& setup,
                                                    double wavelength) {
  setup.validate();
  require_positive(wavelength, "wavelength");
  const double R = setup.R();
  DimensionlessParams params;
  params.k = R * R / (setup.L2 * wavelength);
  params.ell = (setup.L1 + setup.L2) / setup.L1;
  params.beta = (setup.L2 / setup.L1) * (setup.R0 / R);
  return params;
}

std::string to_string(Model model) {
  switch (model) {
    case Model::quantum: return "quantum";
    case Model::classical: return "classical";
    case Model::ideal: return "ideal";
  }
  return "unknown";
}

double Interaction::start() const {
  if (!(eta >= 0.0)) throw DomainError("capture parameter must be >= 0");
  double s0 = 1.0 + eta;
  if (phase != nullptr && !phase->is_null()) s0 = std::max(s0, phase->s_min());
  return s0;
}

AmplitudeResult amplitude(double u, const DimensionlessParams& params,
                          const Interaction& interaction,
                          const QuadratureSpec& quad) {
  params.validate();
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("u must be >= 0");
  const double k = params.k;
  const double ell = params.ell;
  const double chirp = kPi * k * ell;  // phase pi k ell s^2
  const double radial = 2.0 * kPi * k * u;

  auto bare = [=](double s) {
    return 2.0 * chirp * s * std::polar(1.0, chirp * s * s) * bessel_j0(radial * s);
  };

  const double s0 = interaction.start();
  AmplitudeResult result;
  result.value = Complex(0.0, 1.0) * std::polar(1.0, -kPi * k * u * u / ell);

  std::vector<double> breaks = {0.0};
  append_uniform(breaks, 0.0, s0, chirp * s0 * s0 + radial * s0);
  const auto inner = integrate_adaptive(bare, std::span<const double>(breaks), quad);
  result.value -= inner.value;
  result.error += inner.error;
  result.converged = inner.converged;

  const EikonalPhase* phase = interaction.phase;
  if (phase == nullptr || phase->is_null()) return result;
  const double s_end = phase->s_negligible();
  if (!(s_end > s0)) return result;

  // Panels follow the table nodes, split further so that the eikonal phase,
  // the chirp and the Bessel argument each advance by a bounded amount.
  breaks.assign(1, s0);
  double phi_prev = (*phase)(s0);
  auto extend = [&](double b) {
    const double a = breaks.back();
    const double phi_b = (*phase)(b);
    const double advance = std::abs(phi_prev - phi_b) + chirp * (b * b - a * a) +
                           radial * (b - a);
    append_uniform(breaks, a, b, advance);
    phi_prev = phi_b;
  };
  for (double node : phase->s_grid()) {
    if (node > s0 && node < s_end) extend(node);
  }
  extend(s_end);

  auto correction = [&](double s) {
    const double phi = (*phase)(s);
    // exp(i phi) - 1 without cancellation for small phi.
    const double half = std::sin(0.5 * phi);
    return bare(s) * Complex(-2.0 * half * half, std::sin(phi));
  };
  const auto outer =
      integrate_adaptive(correction, std::span<const double>(breaks), quad);
  result.value += outer.value;
  result.error += outer.error;
  result.converged = result.converged && outer.converged;
  return result;
}

std::vector<double> uniform_grid(double u_max, int points) {
  if (!(u_max > 0.0)) throw DomainError("grid extent must be positive");
  if (points < 2) throw DomainError("grid needs at least two points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = u_max * i / (points - 1);
  return grid;
}

RadialProfile point_source_pattern(std::span<const double> u_grid,
                                   const DimensionlessParams& params,
                                   const Interaction& interaction,
                                   const PatternOptions& options) {
  params.validate();
  RadialProfile profile;
  profile.u.assign(u_grid.begin(), u_grid.end());
  profile.w.resize(u_grid.size());
  std::vector<char> converged(u_grid.size(), 1);
  parallel_for(u_grid.size(), options.threads, [&](std::size_t i) {
    const auto psi = amplitude(u_grid[i], params, interaction, options.quad);
    profile.w[i] = std::norm(psi.value);
    converged[i] = psi.converged;
  });
  const bool interacting = interaction.phase != nullptr && !interaction.phase->is_null();
  profile.meta.model = interacting ? Model::quantum : Model::ideal;
  profile.meta.converged =
      std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });
  if (!profile.meta.converged) profile.meta.notes = "quadrature tolerance not reached";
  return profile;
}

RadialProfile source_averaged_pattern(std::span<const double> u_grid,
                                      const DimensionlessParams& params,
                                      const Interaction& interaction,
                                      const PatternOptions& options) {
  params.validate();
  if (params.beta == 0.0) return point_source_pattern(u_grid, params, interaction, options);
  if (options.source_samples < 1 || options.angular_samples < 1) {
    throw DomainError("source averaging needs positive sample counts");
  }
  const double beta = params.beta;
  double u_max = 0.0;
  for (double u : u_grid) {
    if (!(u >= 0.0)) throw DomainError("grid radii must be >= 0");
    u_max = std::max(u_max, u);
  }
  const double r_max = u_max + beta;

  // Fine radial table of w_p, resolved against the fastest beat between
  // contributions of obstacle-plane radii up to s_top.
  double s_top = r_max / params.ell + 1.0;
  if (interaction.phase != nullptr && !interaction.phase->is_null()) {
    s_top = std::max(s_top, interaction.phase->s_negligible() + 1.0);
  }
  const double period = 1.0 / (2.0 * params.k * s_top);
  double step = std::min(0.01, period / 16.0);
  int nodes = static_cast<int>(std::ceil(r_max / step)) + 1;
  nodes = std::clamp(nodes, 8, 400000);
  step = r_max / (nodes - 1);
  const auto fine = uniform_grid(r_max, nodes);
  const auto table = point_source_pattern(fine, params, interaction, options);

  boost::math::interpolators::cardinal_cubic_b_spline<double> wp(
      table.w.data(), table.w.size(), 0.0, step, 0.0);

  const auto radial_rule = gauss_legendre(options.source_samples);
  const int angles = options.angular_samples;
  std::vector<double> cosines(angles);
  for (int j = 0; j < angles; ++j) cosines[j] = std::cos(2.0 * kPi * (j + 0.5) / angles);

  RadialProfile profile;
  profile.u.assign(u_grid.begin(), u_grid.end());
  profile.w.resize(u_grid.size());
  parallel_for(u_grid.size(), options.threads, [&](std::size_t i) {
    const double u = u_grid[i];
    double total = 0.0;
    for (const auto& [x, weight] : radial_rule) {
      const double t = 0.5 * beta * (x + 1.0);
      double ring = 0.0;
      for (double c : cosines) {
        const double r2 = u * u + t * t + 2.0 * u * t * c;
        ring += wp(std::min(std::sqrt(std::max(r2, 0.0)), r_max));
      }
      // Radial weight 2 t / beta^2 over [0, beta], Jacobian beta / 2.
      total += weight * (t / beta) * ring / angles;
    }
    profile.w[i] = std::max(total, 0.0);
  });
  profile.meta = table.meta;
  profile.meta.source_averaged = true;
  return profile;
}

RadialProfile wavelength_averaged_pattern(std::span<const double> u_grid,
                                          const PoissonSetup& setup,
                                          const InteractionSettings& settings,
                                          const PatternOptions& options) {
  setup.validate();
  const auto nodes = velocity_nodes(setup.particle, options.velocity_nodes);
  const bool interacting = settings.enabled && setup.particle.C4() > 0.0;

  RadialProfile total;
  total.u.assign(u_grid.begin(), u_grid.end());
  total.w.assign(u_grid.size(), 0.0);
  bool converged = true;
  for (const auto& node : nodes) {
    const auto params = DimensionlessParams::from_setup(setup, setup.wavelength_at(node.v));
    std::optional<EikonalPhase> phase;
    Interaction interaction;
    if (interacting) {
      phase = EikonalPhase::build(setup.obstacle, setup.particle, node.v, settings.table,
                                  options.quad);
      interaction.phase = &*phase;
    }
    if (settings.capture) {
      interaction.eta =
          capture_eta(setup.obstacle, setup.particle, node.v, settings.trajectory);
    }
    const auto pattern = source_averaged_pattern(u_grid, params, interaction, options);
    for (std::size_t i = 0; i < u_grid.size(); ++i) total.w[i] += node.weight * pattern.w[i];
    converged = converged && pattern.meta.converged;
  }
  total.meta.model = interacting ? Model::quantum : Model::ideal;
  total.meta.source_averaged = setup.R0 > 0.0;
  total.meta.velocity_averaged = nodes.size() > 1;
  total.meta.converged = converged;
  total.meta.setup_hash = setup_hash(setup);
  return total;
}

double spot_radius(const DimensionlessParams& params) {
  require_positive(params.k, "k");
  return 0.4 / params.k;
}

std::optional<double> first_minimum(const RadialProfile& profile) {
  const auto& u = profile.u;
  const auto& w = profile.w;
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    if (w[i] < w[i - 1] && w[i] <= w[i + 1]) {
      // Vertex of the parabola through the three nodes.
      const double x0 = u[i - 1], x1 = u[i], x2 = u[i + 1];
      const double y0 = w[i - 1], y1 = w[i], y2 = w[i + 1];
      const double d1 = (y1 - y0) / (x1 - x0);
      const double d2 = (y2 - y1) / (x2 - x1);
      const double curvature = (d2 - d1) / (x2 - x0);
      if (curvature <= 0.0) return x1;
      return 0.5 * (x0 + x1) - d1 / (2.0 * curvature);
    }
  }
  return std::nullopt;
}

std::vector<ConstraintReport> visibility_checks(const PoissonSetup& setup) {
  std::vector<ConstraintReport> reports;
  const double R = setup.R();
  const double shadow_limit = R * (setup.L1 + setup.L2) / setup.L2;
  reports.push_back(make_report("shadow_existence", setup.R0, shadow_limit,
                                Direction::less, "R0 < R (L1 + L2) / L2"));
  if (!(setup.R0 < shadow_limit)) return reports;

  const double lambda = setup.wavelength_at();
  const auto params = DimensionlessParams::from_setup(setup, lambda);
  reports.push_back(make_report("spot_vs_shadow", params.k * params.ell, 0.4,
                                Direction::greater_equal,
                                "k ell >= 0.4: spot narrower than the shadow; k = " +
                                    short_number(params.k) + ", ell = " +
                                    short_number(params.ell)));
  reports.push_back(make_report("source_radius", setup.R0, 0.4 * setup.L1 * lambda / R,
                                Direction::less_equal, "R0 <= 0.4 L1 lambda / R"));
  reports.push_back(make_report("paraxial_obstacle", R / std::min(setup.L1, setup.L2),
                                0.01, Direction::less_equal, "R / min(L1, L2)"));
  reports.push_back(make_report("paraxial_source", setup.R0 / std::min(setup.L1, setup.L2),
                                0.01, Direction::less_equal, "R0 / min(L1, L2)"));
  return reports;
}

std::string setup_hash(const PoissonSetup& setup) {
  std::string text;
  for (double value : {setup.R0, setup.L1, setup.L2, setup.obstacle.R, setup.obstacle.b,
                       setup.particle.mass_amu, setup.particle.alpha_m3,
                       setup.particle.v_long, setup.particle.dv_rel,
                       setup.wavelength.value_or(0.0)}) {
    text += fixed(value);
    text += ';';
  }
  text += setup.obstacle.kind == ObstacleKind::sphere ? "sphere" : "disc";
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[20];
  std::snprintf(buffer, sizeof buffer, "%016" PRIx64, hash);
  return buffer;
}

}  // namespace arago
