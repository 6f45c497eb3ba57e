#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "arago/errors.hpp"
#include "arago/numerics.hpp"

using namespace arago;
using std::numbers::pi;

namespace {

// J0(x) = (1/pi) int_0^pi cos(x sin t) dt; the trapezoid rule converges
// geometrically for this periodic integrand.
double j0_oracle(double x) {
  const int n = 400;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::cos(x * std::sin(pi * (i + 0.5) / n));
  return sum / n;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("bessel_j0 matches the integral representation") {
    for (double x : {0.0, 0.1, 1.0, 2.404825557695773, 7.3, 25.0, 80.0, -3.0}) {
      CHECK(bessel_j0(x) == doctest::Approx(j0_oracle(x)).epsilon(1e-12).scale(1.0));
    }
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-14);
    CHECK_THROWS_AS(bessel_j0(std::nan("")), DomainError);
  }

  TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
    const auto rule = gauss_legendre(8);
    REQUIRE(rule.size() == 8);
    for (int p = 0; p <= 15; ++p) {
      double sum = 0.0;
      for (const auto& [x, w] : rule) sum += w * std::pow(x, p);
      const double exact = p % 2 == 0 ? 2.0 / (p + 1) : 0.0;
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }

  TEST_CASE("gauss_hermite reproduces normal moments") {
    const auto rule = gauss_hermite(9);
    double m0 = 0, m2 = 0, m4 = 0;
    for (const auto& [x, w] : rule) {
      m0 += w;
      // Nodes are for weight exp(-x^2); x sqrt(2) is standard normal.
      m2 += w * 2.0 * x * x;
      m4 += w * 4.0 * std::pow(x, 4);
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
    for (std::size_t i = 1; i < rule.size(); ++i) CHECK(rule[i].first > rule[i - 1].first);
  }

  TEST_CASE("integrate_adaptive on analytic integrals") {
    auto sqrt_result = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
    CHECK(sqrt_result.converged);
    CHECK(sqrt_result.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

    auto cos_result = integrate_adaptive([](double x) { return std::cos(x); }, 0.0, 100.0);
    CHECK(cos_result.value == doctest::Approx(std::sin(100.0)).epsilon(1e-9));

    const double kinks[] = {0.0, 0.3, 1.0};
    auto kink = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, kinks);
    CHECK(kink.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));
    CHECK(kink.subdivisions <= 4);

    auto complex_result = integrate_adaptive(
        [](double x) { return std::polar(1.0, 3.0 * x); }, 0.0, 2.0);
    const auto exact = (std::polar(1.0, 6.0) - 1.0) / std::complex<double>(0.0, 3.0);
    CHECK(std::abs(complex_result.value - exact) < 1e-12);

    CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
    CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 2.0, 1.0), DomainError);
  }

  TEST_CASE("non-convergence is reported, not hidden") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 3;
    const auto result =
        integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, spec);
    CHECK_FALSE(result.converged);
    CHECK(result.error > 0.0);
  }

  TEST_CASE("bisect finds roots and rejects bad brackets") {
    const double root = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
    CHECK(root == doctest::Approx(std::numbers::sqrt2).epsilon(1e-13));
    CHECK(bisect([](double x) { return x; }, 0.0, 1.0, 1e-12) == 0.0);
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), BracketError);
  }

  TEST_CASE("QuadratureSpec validation") {
    QuadratureSpec spec;
    spec.rel_tol = -1.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
  }
}
