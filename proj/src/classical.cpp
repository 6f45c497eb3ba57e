#include "arago/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "arago/constants.hpp"
#include "arago/errors.hpp"

namespace arago {

namespace {

constexpr double kPi = std::numbers::pi;

// Angle subtended by the part of the circle |x| = r that lies within
// distance beta of a point at radius u.
double disc_arc(double r, double u, double beta) {
  if (u == 0.0 || r == 0.0) return std::max(u, r) < beta ? 2.0 * kPi : 0.0;
  if (r + u <= beta) return 2.0 * kPi;
  if (r >= u + beta || r <= u - beta) return 0.0;
  const double c = (r * r + u * u - beta * beta) / (2.0 * r * u);
  return 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
}

struct Run {
  std::size_t first;
  std::size_t last;  // inclusive
  double lo;
  double hi;
};

// Maximal index ranges over which |u_final| is monotone.
std::vector<Run> monotone_runs(const std::vector<double>& radius) {
  std::vector<Run> runs;
  if (radius.size() < 2) return runs;
  std::size_t first = 0;
  int direction = 0;
  for (std::size_t i = 0; i + 1 < radius.size(); ++i) {
    const double step = radius[i + 1] - radius[i];
    const int d = step > 0.0 ? 1 : (step < 0.0 ? -1 : direction);
    if (direction != 0 && d != direction) {
      runs.push_back({first, i, 0.0, 0.0});
      first = i;
    }
    direction = d;
  }
  runs.push_back({first, radius.size() - 1, 0.0, 0.0});
  for (auto& run : runs) {
    const auto [lo, hi] = std::minmax(radius[run.first], radius[run.last]);
    run.lo = lo;
    run.hi = hi;
  }
  return runs;
}

}  // namespace

RayMap ray_map(const DimensionlessParams& params, const Interaction& interaction,
               double L2, int points) {
  params.validate();
  if (!(L2 > 0.0)) throw DomainError("L2 must be positive");
  if (points < 16) throw DomainError("ray map needs at least 16 points");
  RayMap map;
  map.ell = params.ell;
  map.s_start = interaction.start();
  const EikonalPhase* phase = interaction.phase;
  const bool interacting = phase != nullptr && !phase->is_null();
  map.s_free = interacting ? std::max(phase->s_negligible(), map.s_start) : map.s_start;
  if (!(map.s_free > map.s_start)) return map;

  // Screen displacement per unit d(phi)/ds, in units of R.
  const double R = phase->obstacle().R;
  const double scale = L2 * kConstants.hbar /
                       (phase->particle().mass_kg() * phase->v_z() * R * R);

  const double span = map.s_free - map.s_start;
  const int half = points / 2;
  std::vector<double> nodes;
  nodes.reserve(2 * half + 2);
  const double x_lo = 1e-9 * span;
  for (int i = 0; i < half; ++i) {
    nodes.push_back(map.s_start + x_lo * std::pow(span / x_lo, double(i) / (half - 1)));
  }
  for (int i = 0; i <= half; ++i) nodes.push_back(map.s_start + span * i / half);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [span](double a, double b) { return b - a < 1e-15 * span; }),
              nodes.end());
  nodes.back() = map.s_free;

  map.s = nodes;
  map.u_final.resize(nodes.size());
  map.jacobian.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = nodes[i];
    map.u_final[i] = map.ell * s + scale * phase->derivative(s);
    map.jacobian[i] = map.ell + scale * phase->second_derivative(s);
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if ((map.jacobian[i] < 0.0) != (map.jacobian[i + 1] < 0.0)) ++map.caustics;
  }
  return map;
}

RadialProfile classical_point_pattern(std::span<const double> u_grid, const RayMap& map) {
  const double ell = map.ell;
  if (!(ell > 1.0)) throw DomainError("ray map is not initialised");
  std::vector<double> radius(map.u_final.size());
  std::transform(map.u_final.begin(), map.u_final.end(), radius.begin(),
                 [](double u) { return std::abs(u); });
  const auto runs = monotone_runs(radius);

  auto density = [&](double u) {
    double w = u >= ell * map.s_free ? 1.0 : 0.0;
    for (const auto& run : runs) {
      if (u < run.lo || u > run.hi) continue;
      // Segment of this run containing u.
      std::size_t a = run.first;
      std::size_t b = run.last;
      const bool rising = radius[b] >= radius[a];
      while (b - a > 1) {
        const std::size_t mid = (a + b) / 2;
        if ((radius[mid] <= u) == rising) a = mid; else b = mid;
      }
      const double dr = radius[b] - radius[a];
      const double ds = map.s[b] - map.s[a];
      if (dr == 0.0) continue;
      const double s = map.s[a] + (u - radius[a]) / dr * ds;
      w += ell * ell * s * std::abs(ds / dr) / u;
    }
    return w;
  };

  RadialProfile profile;
  profile.u.assign(u_grid.begin(), u_grid.end());
  profile.w.resize(u_grid.size());
  profile.meta.model = Model::classical;
  profile.meta.caustics = map.caustics;

  const bool focusing = std::any_of(runs.begin(), runs.end(),
                                    [](const Run& run) { return run.lo == 0.0; }) ||
                        std::any_of(map.u_final.begin(), map.u_final.end(),
                                    [](double u) { return u <= 0.0; });
  double first_nonzero = std::numeric_limits<double>::quiet_NaN();
  double sum_wu = 0.0;
  double sum_uu = 0.0;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double u = u_grid[i];
    if (!(u >= 0.0)) throw DomainError("grid radii must be >= 0");
    if (u == 0.0) continue;
    profile.w[i] = density(u);
    if (std::isnan(first_nonzero)) first_nonzero = profile.w[i];
    if (u <= 0.2) {
      sum_wu += profile.w[i] / u;
      sum_uu += 1.0 / (u * u);
    }
  }
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (u_grid[i] != 0.0) continue;
    if (focusing) {
      profile.w[i] = std::isnan(first_nonzero) ? 0.0 : first_nonzero;
    } else {
      profile.w[i] = 0.0;
    }
  }
  if (focusing) {
    profile.meta.divergent_origin = true;
    profile.meta.origin_coefficient = sum_uu > 0.0 ? sum_wu / sum_uu : 0.0;
    profile.meta.notes = "rays focus onto the axis; w ~ c/u near the origin";
  }
  return profile;
}

RadialProfile classical_source_averaged(std::span<const double> u_grid,
                                        const DimensionlessParams& params,
                                        const RayMap& map) {
  params.validate();
  if (params.beta == 0.0) return classical_point_pattern(u_grid, map);
  const double beta = params.beta;
  const double ell = map.ell;
  // Two-point Gauss rule per ray segment; |u_final| is linear within a segment.
  const double g = 0.5 / std::numbers::sqrt3;

  auto average = [&](double u) {
    double rays = 0.0;
    for (std::size_t i = 0; i + 1 < map.s.size(); ++i) {
      const double s0 = map.s[i], s1 = map.s[i + 1];
      const double a0 = map.u_final[i], a1 = map.u_final[i + 1];
      double segment = 0.0;
      for (double x : {0.5 - g, 0.5 + g}) {
        const double s = s0 + x * (s1 - s0);
        const double r = std::abs(a0 + x * (a1 - a0));
        segment += s * disc_arc(r, u, beta);
      }
      rays += 0.5 * segment * (s1 - s0);
    }
    rays *= ell * ell;

    // Unperturbed rays beyond s_free land at r = ell s.
    const double r_lo = std::max(ell * map.s_free, std::max(u - beta, 0.0));
    const double r_hi = u + beta;
    double free = 0.0;
    if (r_hi > r_lo) {
      std::vector<double> breaks = {r_lo};
      const double inner = beta - u;
      if (inner > r_lo && inner < r_hi) breaks.push_back(inner);
      breaks.push_back(r_hi);
      QuadratureSpec spec;
      spec.rel_tol = 1e-10;
      free = integrate_adaptive([&](double r) { return r * disc_arc(r, u, beta); },
                                std::span<const double>(breaks), spec)
                 .value;
    }
    return (rays + free) / (kPi * beta * beta);
  };

  RadialProfile profile;
  profile.u.assign(u_grid.begin(), u_grid.end());
  profile.w.resize(u_grid.size());
  for (std::size_t i = 0; i < u_grid.size(); ++i) profile.w[i] = average(u_grid[i]);
  profile.meta.model = Model::classical;
  profile.meta.source_averaged = true;
  profile.meta.caustics = map.caustics;
  return profile;
}

Distinguishability distinguishability(const RadialProfile& quantum,
                                      const RadialProfile& classical, double ell) {
  if (quantum.u != classical.u || quantum.w.size() != quantum.u.size() ||
      classical.w.size() != classical.u.size()) {
    throw DomainError("profiles are not on a common grid");
  }
  if (quantum.u.empty()) throw DomainError("profiles are empty");
  Distinguishability out;
  const double wq = quantum.w.front();
  const double wc = classical.w.front();
  if (wc > 0.0) {
    out.height_ratio = wq / wc;
  } else {
    out.height_ratio = wq > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  const auto& u = quantum.u;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (u[i + 1] > ell) break;
    const double d0 = std::abs(quantum.w[i] - classical.w[i]);
    const double d1 = std::abs(quantum.w[i + 1] - classical.w[i + 1]);
    out.l1_distance += 0.5 * (d0 + d1) * (u[i + 1] - u[i]);
  }
  return out;
}

}  // namespace arago
