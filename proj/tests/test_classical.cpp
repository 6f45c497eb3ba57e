#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arago/classical.hpp"
#include "arago/errors.hpp"

using namespace arago;
using std::numbers::pi;

namespace {

const ParticleSpecies kAu100{"Au100", 19700.0, 500e-30, 2.0, 0.0};
constexpr double kL2 = 0.125;

// Area of the disc of radius b centred at distance u that lies outside the
// circle of radius a, divided by the disc area.
double outside_fraction(double a, double b, double u) {
  auto lens = [](double r1, double r2, double d) {
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) return pi * std::pow(std::min(r1, r2), 2);
    const double x1 = (d * d + r1 * r1 - r2 * r2) / (2 * d * r1);
    const double x2 = (d * d + r2 * r2 - r1 * r1) / (2 * d * r2);
    return r1 * r1 * std::acos(x1) + r2 * r2 * std::acos(x2) -
           0.5 * std::sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2));
  };
  return 1.0 - lens(a, b, u) / (pi * b * b);
}

struct Fixture {
  Obstacle obstacle;
  EikonalPhase phase;
  Interaction interaction;
  DimensionlessParams params;
  RayMap map;

  explicit Fixture(ObstacleKind kind)
      : obstacle{kind, 500e-9, 10e-9},
        phase(EikonalPhase::build(obstacle, kAu100, 2.0)),
        interaction{&phase, capture_eta(obstacle, kAu100, 2.0)},
        params{0.2, 2.0, 0.0},
        map(ray_map(params, interaction, kL2)) {}
};

}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("without a kick the shadow is geometric") {
    const DimensionlessParams params{0.2, 2.0, 0.0};
    const auto map = ray_map(params, {}, kL2);
    CHECK(map.s.empty());
    const std::vector<double> grid{0.0, 1.0, 1.99, 2.01, 5.0};
    const auto p = classical_point_pattern(grid, map);
    CHECK(p.w == std::vector<double>{0.0, 0.0, 0.0, 1.0, 1.0});
  }

  TEST_CASE("source-averaged geometric shadow equals the disc overlap") {
    const DimensionlessParams params{0.2, 2.0, 3.0};
    const auto map = ray_map(params, {nullptr, 0.1}, kL2);
    const std::vector<double> grid{0.0, 1.0, 2.5};
    const auto p = classical_source_averaged(grid, params, map);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(p.w[i] == doctest::Approx(outside_fraction(2.2, 3.0, grid[i])).epsilon(1e-8));
    }
  }

  TEST_CASE("ray map geometry") {
    Fixture f(ObstacleKind::sphere);
    const auto& m = f.map;
    REQUIRE(m.s.size() > 100);
    CHECK(m.s.front() == doctest::Approx(f.interaction.start()));
    CHECK(m.u_final.back() == doctest::Approx(2.0 * m.s_free).epsilon(1e-3));
    // Kicks point inward.
    for (std::size_t i = 0; i < m.s.size(); ++i) CHECK(m.u_final[i] <= 2.0 * m.s[i]);
    // Jacobian against finite differences of the map.
    for (std::size_t i = m.s.size() / 2; i + 1 < m.s.size(); i += m.s.size() / 10) {
      const double fd = (m.u_final[i + 1] - m.u_final[i - 1]) / (m.s[i + 1] - m.s[i - 1]);
      CHECK(m.jacobian[i] == doctest::Approx(fd).epsilon(1e-3));
    }
  }

  TEST_CASE("flux conservation") {
    // Screen-space integral of w u over u < U against the ray-space count
    // ell^2 int s ds over the rays that land inside U. Rays skimming the
    // wall are thrown across the axis to |u| > U and must be excluded.
    for (auto kind : {ObstacleKind::sphere, ObstacleKind::disc}) {
      Fixture f(kind);
      const auto& m = f.map;
      const double U = 2.0 * m.s_free + 1.0;
      double expected = 0.5 * (U * U - 4.0 * m.s_free * m.s_free);
      for (std::size_t i = 0; i + 1 < m.s.size(); ++i) {
        const int sub = 64;
        for (int j = 0; j < sub; ++j) {
          const double x = (j + 0.5) / sub;
          const double s = m.s[i] + x * (m.s[i + 1] - m.s[i]);
          const double u = m.u_final[i] + x * (m.u_final[i + 1] - m.u_final[i]);
          if (std::abs(u) < U) expected += 4.0 * s * (m.s[i + 1] - m.s[i]) / sub;
        }
      }
      const auto grid = uniform_grid(U, 40001);
      const auto p = classical_point_pattern(grid, m);
      double integral = 0.0;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a = i == 1 ? 0.0 : grid[i - 1] * p.w[i - 1];
        integral += 0.5 * (a + grid[i] * p.w[i]) * (grid[i] - grid[i - 1]);
      }
      CHECK(integral == doctest::Approx(expected).epsilon(5e-3));
    }
  }

  TEST_CASE("sphere focuses onto the axis like 1/u") {
    Fixture f(ObstacleKind::sphere);
    const std::vector<double> grid{0.0, 0.02, 0.2};
    const auto p = classical_point_pattern(grid, f.map);
    CHECK(p.meta.divergent_origin);
    CHECK(p.meta.origin_coefficient > 0.0);
    CHECK(p.w[0] == p.w[1]);
    CHECK(std::log(p.w[1] / p.w[2]) / std::log(10.0) == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("source averaging keeps the focus finite") {
    Fixture f(ObstacleKind::sphere);
    DimensionlessParams params = f.params;
    params.beta = 1.0;
    const std::vector<double> grid{0.0, 0.5};
    const auto p = classical_source_averaged(grid, params, f.map);
    CHECK(std::isfinite(p.w[0]));
    CHECK(p.w[0] > 0.0);
    CHECK(p.meta.source_averaged);
  }

  TEST_CASE("distinguishability") {
    RadialProfile q, c;
    q.u = c.u = {0.0, 1.0, 2.0, 3.0};
    q.w = {2.0, 1.0, 1.0, 1.0};
    c.w = {1.0, 1.0, 0.0, 1.0};
    const auto d = distinguishability(q, c, 2.0);
    CHECK(d.height_ratio == 2.0);
    CHECK(d.l1_distance == doctest::Approx(0.5 + 0.5));

    c.w[0] = 0.0;
    CHECK(std::isinf(distinguishability(q, c, 2.0).height_ratio));
    q.w[0] = 0.0;
    CHECK(distinguishability(q, c, 2.0).height_ratio == 1.0);

    c.u[1] = 1.1;
    CHECK_THROWS_AS(distinguishability(q, c, 2.0), DomainError);
  }
}
