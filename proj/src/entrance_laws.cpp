#include "twopoint/entrance_laws.hpp"

#include <cmath>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

// W^(1)(2a) / (e^{Phi(1) 2a} - 1), the normalization of the excursions
// from -a.
double minus_normalization(const ScaleEngine& e, double a) {
  return e.w(1.0, 2 * a) / std::expm1(2 * a * e.phi(1.0));
}

// Phi'(q)^{-1} - (e^{Phi(q) 2a} - 1) / W^(q)(2a), rewritten without the
// cancellation between its two terms.
double escape_term(const ScaleEngine& e, double q, double two_a) {
  return (1.0 - e.inv_phi_prime(q) * e.remainder(q, two_a)) / e.w(q, two_a);
}

}  // namespace

double entrance_density(const ScaleEngine& e, const TwoPointConfig& cfg, double beta, double y,
                        Endpoint side, ExcursionPart part) {
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  const double a = cfg.a;
  const double half_var = 0.5 * e.model().sigma() * e.model().sigma();
  const double big = std::exp(2 * a * e.phi(beta));
  const double w2 = e.w(beta, 2 * a);

  if (side == Endpoint::plus) {
    if (part != ExcursionPart::total)
      throw DomainError("the down/up split is only defined for excursions from -a");
    if (half_var > 0.0)
      throw UnsupportedCase(
          "entrance density of excursions from +a is not available when the process has a "
          "Gaussian component");
    double weight = local_time_weight(e, cfg, 1.0, Endpoint::plus);
    if (!(weight > 0.0)) throw NumericalFault("local-time weight at +a is not positive", weight);
    double bracket = big * (e.remainder(beta, a - y) / w2 +
                            e.remainder(beta, -a - y) * (e.inv_phi_prime(beta) - big / w2));
    return e.phi_prime(1.0) / weight * bracket;
  }

  const double norm = minus_normalization(e, a);
  auto down = [&]() {
    if (half_var == 0.0 || y >= -a) return 0.0;
    double s = -a - y;
    return half_var * norm * (e.phi(beta) * e.remainder(beta, s) - e.remainder_prime(beta, s));
  };
  auto total = [&]() {
    if (y >= a) return 0.0;
    return norm * (big * e.remainder(beta, -a - y) - e.remainder(beta, a - y)) / w2;
  };
  switch (part) {
    case ExcursionPart::total:
      return total();
    case ExcursionPart::down_start:
      return down();
    case ExcursionPart::up_start:
      return total() - down();
  }
  return 0.0;
}

double excursion_laplace(const ScaleEngine& e, const TwoPointConfig& cfg, double q, Endpoint side) {
  if (!(q > 0.0)) throw DomainError("q must be > 0");
  const double two_a = 2 * cfg.a;
  if (side == Endpoint::plus) {
    return std::exp(two_a * (e.phi(q) - e.phi(1.0))) * escape_term(e, q, two_a) /
           escape_term(e, 1.0, two_a);
  }
  return std::expm1(two_a * e.phi(q)) / std::expm1(two_a * e.phi(1.0)) * e.w(1.0, two_a) / e.w(q, two_a);
}

double excursion_laplace_split(const ScaleEngine& e, const TwoPointConfig& cfg, double q,
                               ExcursionPart part) {
  if (!(q > 0.0)) throw DomainError("q must be > 0");
  const double half_var = 0.5 * e.model().sigma() * e.model().sigma();
  const double norm = minus_normalization(e, cfg.a);
  const double creep = half_var * e.phi(q);
  switch (part) {
    case ExcursionPart::down_start:
      return norm * creep;
    case ExcursionPart::up_start:
      return norm * (std::expm1(2 * cfg.a * e.phi(q)) / e.w(q, 2 * cfg.a) - creep);
    case ExcursionPart::total:
      return excursion_laplace(e, cfg, q, Endpoint::minus);
  }
  return 0.0;
}

}  // namespace twopoint
