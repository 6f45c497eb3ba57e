#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "arago/errors.hpp"

namespace arago {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

template <typename T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  bool converged = true;
  int subdivisions = 0;
};

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

/// Gauss-Legendre rule with `count` nodes on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int count);

/// Gauss-Hermite rule for the weight exp(-x^2), normalised so the weights sum
/// to one.
std::vector<std::pair<double, double>> gauss_hermite(int count);

/// Root of f in [lo, hi] by bisection; the returned bracket is narrower than
/// `tol`. Requires a sign change, otherwise throws BracketError.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) {
    throw BracketError("bisection interval does not bracket a sign change");
  }
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

template <typename T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F, typename T = std::invoke_result_t<F&, double>>
Panel<T> kronrod15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(centre - dx) + f(centre + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over the union of the
/// intervals delimited by `breakpoints` (sorted, at least two entries).
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|) or max_subdivisions
/// bisections have been spent. An exhausted budget is reported through
/// `converged == false`, never silently.
template <typename F, typename T = std::invoke_result_t<F&, double>>
QuadratureResult<T> integrate_adaptive(F&& f, std::span<const double> breakpoints,
                                       const QuadratureSpec& spec = {}) {
  spec.validate();
  if (breakpoints.size() < 2) {
    throw DomainError("quadrature needs at least two breakpoints");
  }
  std::priority_queue<detail::Panel<T>> panels;
  QuadratureResult<T> result;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(a <= b)) throw DomainError("quadrature breakpoints must be sorted");
    if (a == b) continue;
    panels.push(detail::kronrod15(f, a, b));
  }
  if (panels.empty()) return result;

  auto totals = [&panels]() {
    // priority_queue hides its container; copy is cheap relative to f.
    auto copy = panels;
    T value{};
    double error = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (error > std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(value))) {
    if (result.subdivisions >= spec.max_subdivisions) {
      result.converged = false;
      break;
    }
    const auto worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      result.converged = false;  // panel at roundoff scale
      break;
    }
    panels.pop();
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++result.subdivisions;
  }
  std::tie(result.value, result.error) = totals();
  return result;
}

/// Convenience overload for a single interval [a, b]; a == b yields zero.
template <typename F, typename T = std::invoke_result_t<F&, double>>
QuadratureResult<T> integrate_adaptive(F&& f, double a, double b,
                                       const QuadratureSpec& spec = {}) {
  if (a == b) return {};
  if (!(a < b)) throw DomainError("quadrature requires a < b");
  const std::array<double, 2> ends = {a, b};
  return integrate_adaptive(std::forward<F>(f), std::span<const double>(ends), spec);
}

}  // namespace arago
