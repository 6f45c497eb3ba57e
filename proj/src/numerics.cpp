#include "arago/numerics.hpp"

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

namespace arago {

namespace {

using BesselPolicy = boost::math::policies::policy<
    boost::math::policies::promote_double<false>>;

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("max_subdivisions must be >= 1");
  }
}

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j0 argument must be finite");
  return boost::math::cyl_bessel_j(0, std::abs(x), BesselPolicy());
}

std::vector<std::pair<double, double>> gauss_legendre(int count) {
  if (count < 1) throw DomainError("Gauss-Legendre rule needs >= 1 node");
  std::vector<std::pair<double, double>> rule(count);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      derivative = count * (x * p0 - p1) / (x * x - 1.0);
      const double step = p0 / derivative;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double weight = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule[i] = {-x, weight};
    rule[count - 1 - i] = {x, weight};
  }
  return rule;
}

std::vector<std::pair<double, double>> gauss_hermite(int count) {
  if (count < 1) throw DomainError("Gauss-Hermite rule needs >= 1 node");
  std::vector<std::pair<double, double>> rule(count);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int half = (count + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses for the largest roots first.
    if (i == 0) {
      z = std::sqrt(2.0 * count + 1.0) - 1.85575 * std::pow(2.0 * count + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(count, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule[0].first;
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule[1].first;
    } else {
      z = 2.0 * z - rule[i - 2].first;
    }
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < count; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
      }
      derivative = std::sqrt(2.0 * count) * p2;
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double weight = 2.0 / (derivative * derivative) / std::sqrt(std::numbers::pi);
    rule[i] = {z, weight};
    rule[count - 1 - i] = {-z, weight};
  }
  if (count % 2 == 1) rule[count / 2].first = 0.0;
  std::reverse(rule.begin(), rule.end());
  return rule;
}

}  // namespace arago
