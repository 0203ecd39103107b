#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "twopoint/errors.hpp"

namespace twopoint {

/// Controls for the Fourier-series (Abate-Whitt) inversion with Euler
/// summation. `contour_eps` sets the discretization error target: the
/// damping is A = -ln(contour_eps), giving abscissa A / (2 l t).
struct InversionParams {
  double tol = 1e-10;
  int max_terms = 400;
  double contour_eps = 1e-13;
};

struct InversionResult {
  double value = 0.0;
  double error = 0.0;
  int terms = 0;
};

namespace detail {

inline constexpr int kEulerOrder = 15;
inline constexpr int kLattice = 2;

}  // namespace detail

/// Inverts F(theta) = int_0^inf e^{-theta t} f(t) dt at t > 0.
///
/// If `abscissa` is positive it replaces the default A / (2 l t); callers use
/// this to steer the contour away from removable singularities. Throws
/// NumericalFault when the accelerated partial sums have not settled to
/// within tol (relative to the larger of |f(t)| and the transform's scale)
/// after max_terms blocks.
template <class Transform>
InversionResult euler_invert(Transform&& transform, double t, const InversionParams& params,
                             double abscissa = -1.0) {
  using C = std::complex<double>;
  constexpr int l = detail::kLattice;
  constexpr int m = detail::kEulerOrder;
  const double pi = std::numbers::pi;
  const double A = -std::log(params.contour_eps);
  const double c = abscissa > 0.0 ? abscissa : A / (2.0 * l * t);
  const double prefactor = std::exp(c * t) / (l * t);
  const double step = pi / (l * t);

  double binom[m + 1];
  binom[0] = 1.0;
  for (int j = 1; j <= m; ++j) binom[j] = binom[j - 1] * (m - j + 1) / j;
  const double norm = std::ldexp(1.0, -m);

  const double base = 0.5 * transform(C(c, 0.0)).real();
  const double scale_floor = std::abs(base) * prefactor;

  // Ring buffer of the last m + 1 partial sums.
  double partial[m + 1];
  double sum = base;
  int n_sums = 0;
  auto block = [&](int k) {
    double acc = 0.0;
    for (int j = 1; j <= l; ++j) {
      int n = k * l + j;
      C weight = std::polar(1.0, pi * j / l);
      acc += (transform(C(c, step * n)) * weight).real();
    }
    return (k % 2 == 0) ? acc : -acc;
  };
  auto euler = [&]() {
    double e = 0.0;
    for (int j = 0; j <= m; ++j) e += binom[j] * partial[(n_sums + j) % (m + 1)];
    return norm * e * prefactor;
  };

  for (int k = 0; k <= m; ++k) {
    sum += block(k);
    partial[k] = sum;
  }
  n_sums = 0;  // oldest entry index
  double prev = euler();
  double best_err = INFINITY;
  double best_value = prev;
  int stalled = 0;
  for (int k = m + 1; k < params.max_terms; ++k) {
    sum += block(k);
    partial[n_sums] = sum;
    n_sums = (n_sums + 1) % (m + 1);
    double cur = euler();
    double err = std::abs(cur - prev);
    double scale = std::max(std::abs(cur), scale_floor);
    if (err < best_err) {
      best_err = err;
      best_value = cur;
      stalled = 0;
    } else {
      ++stalled;
    }
    if (err <= 1e-3 * params.tol * scale) return {cur, err, k + 1};
    if (stalled >= 6 && best_err <= params.tol * scale) return {best_value, best_err, k + 1};
    prev = cur;
  }
  double scale = std::max(std::abs(best_value), scale_floor);
  if (best_err <= params.tol * scale) return {best_value, best_err, params.max_terms};
  throw NumericalFault("Laplace inversion did not reach tolerance at t = " + std::to_string(t),
                       best_err / scale);
}

}  // namespace twopoint
