#include "twopoint/special.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

double ml_series(double alpha, double beta, double z) {
  if (z == 0.0) return 1.0 / std::tgamma(beta);
  double sum = 0.0;
  double log_z = std::log(z);
  // Terms grow until k ~ z^{1/alpha} / alpha and then decay factorially.
  int k_peak = static_cast<int>(std::pow(z, 1.0 / alpha) / alpha) + 1;
  for (int k = 0; k < 2000; ++k) {
    double arg = alpha * k + beta;
    double term = std::exp(k * log_z - std::lgamma(arg));
    sum += term;
    if (k > k_peak && term < 1e-18 * sum) return sum;
  }
  throw NumericalFault("Mittag-Leffler series did not converge", sum);
}

double exponential_part(double alpha, double beta, double z) {
  return std::pow(z, (1.0 - beta) / alpha) * std::exp(std::pow(z, 1.0 / alpha)) / alpha;
}

double ml_integral(double alpha, double beta, double z) {
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi * (1.0 - beta));
  const double s2 = std::sin(pi * (1.0 - beta + alpha));
  const double c = std::cos(pi * alpha);
  auto f = [&](double s) {
    if (s <= 0.0 || s > 750.0) return 0.0;
    double sa = std::pow(s, alpha);
    double den = sa * sa - 2.0 * sa * z * c + z * z;
    return std::pow(s, alpha - beta) * std::exp(-s) * (sa * s1 - z * s2) / den;
  };
  // The denominator is smallest near s = z^{1/alpha}; past s = 40 the
  // exponential makes that region irrelevant.
  thread_local boost::math::quadrature::tanh_sinh<double> finite;
  thread_local boost::math::quadrature::exp_sinh<double> tail;
  const double split = std::min(std::pow(z, 1.0 / alpha), 40.0);
  double head = finite.integrate(f, 0.0, split, 1e-13);
  double rest = tail.integrate([&](double u) { return f(split + u); }, 1e-13);
  return (head + rest) / pi;
}

// -sum_k z^{-k} / Gamma(beta - alpha k); exponentially accurate once
// z^{1/alpha} is large, used where the integral's quadrature would see
// overflowing powers.
double ml_asymptotic(double alpha, double beta, double z) {
  double sum = 0.0;
  for (int k = 1; k <= 8; ++k) {
    double arg = beta - alpha * k;
    if (arg <= 0.0 && arg == std::floor(arg)) continue;
    sum -= std::pow(z, -k) / std::tgamma(arg);
  }
  return sum;
}

inline constexpr double kAsymptoticLimit = 1e6;

}  // namespace

double mittag_leffler(double alpha, double beta, double z) {
  if (!(z >= 0.0)) throw DomainError("mittag_leffler: z must be >= 0");
  if (z <= kMittagLefflerSeriesLimit) return ml_series(alpha, beta, z);
  return exponential_part(alpha, beta, z) + ml_integral(alpha, beta, z);
}

double mittag_leffler_remainder(double alpha, double beta, double z) {
  if (!(z >= 0.0)) throw DomainError("mittag_leffler_remainder: z must be >= 0");
  if (z <= kMittagLefflerSeriesLimit) {
    if (z == 0.0) return 1.0 / std::tgamma(beta);
    return ml_series(alpha, beta, z) - exponential_part(alpha, beta, z);
  }
  if (z > kAsymptoticLimit) return ml_asymptotic(alpha, beta, z);
  return ml_integral(alpha, beta, z);
}

}  // namespace twopoint
