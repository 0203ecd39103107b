#include "twopoint/last_visit.hpp"

#include <cmath>

#include "twopoint/errors.hpp"

namespace twopoint {

double first_hit_laplace(const ScaleEngine& e, const TwoPointConfig& cfg, double lambda, double x,
                         Endpoint first) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  const double a = cfg.a;
  const double p = e.phi_nonneg(lambda);
  const double inv_dphi = e.inv_phi_prime(lambda);
  // The remainder form needs a finite Phi'(lambda).
  const bool tail_form = inv_dphi > 0.0 && x > a;
  const double w2 = e.w(lambda, 2 * a);
  const double big = std::exp(2 * a * p);

  if (first == Endpoint::plus) {
    if (x <= -a) return 0.0;
    if (x <= a) return e.w(lambda, x + a) / w2;
    if (tail_form) return (big * e.remainder(lambda, x - a) - e.remainder(lambda, x + a)) / w2;
    return (e.w(lambda, x + a) - e.w(lambda, x - a) * big) / w2;
  }
  if (x <= -a) return std::exp(p * (x + a));
  if (x <= a) return std::exp(p * (x + a)) - e.w(lambda, x + a) / w2 * big;
  if (tail_form)
    return big * (e.remainder(lambda, x + a) / w2 + e.remainder(lambda, x - a) * (inv_dphi - big / w2));
  return std::exp(p * (x + a)) - e.w(lambda, x + a) / w2 * big -
         big * e.w(lambda, x - a) * (inv_dphi - big / w2);
}

double last_visit_laplace(const ScaleEngine& e, double lambda, double z, double x, double y) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (!(x < y)) throw DomainError("last visit transform requires x < y");
  // Shift the origin to the midpoint so that {x, y} becomes {-a, a}.
  const TwoPointConfig cfg(0.5 * (y - x));
  const double from = z - 0.5 * (x + y);
  const double gap = y - x;
  double direct = first_hit_laplace(e, cfg, lambda, from, Endpoint::plus);
  double via_x = first_hit_laplace(e, cfg, 0.0, from, Endpoint::minus);
  double from_x = e.w(0.0, gap) / e.w(lambda, gap) * std::exp(-e.phi_zero() * gap);
  return direct + via_x * from_x;
}

double expected_local_time(const ScaleEngine& e, double x, double y) {
  if (!(x < y)) throw DomainError("expected local time requires x < y");
  const double gap = y - x;
  return e.inv_phi_prime(1.0) * e.w(0.0, gap) * std::exp(-e.phi_zero() * gap);
}

}  // namespace twopoint
