#include "twopoint/killed_resolvent.hpp"

#include <cmath>

#include "twopoint/errors.hpp"

namespace twopoint {

TwoPointConfig::TwoPointConfig(double half_width) : a(half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("half-width a must be finite and > 0");
}

namespace {

void require_positive_q(double q) {
  if (!(q > 0.0)) throw DomainError("q must be > 0");
}

}  // namespace

double potential_density_interval(const ScaleEngine& e, double q, double c, double b, double z,
                                  double y) {
  require_positive_q(q);
  if (!(c < b)) throw DomainError("interval requires c < b");
  if (z < c || z > b) throw DomainError("starting point must lie in [c, b]");
  if (y < c || y > b) return 0.0;
  return e.w(q, z - c) * e.w(q, b - y) / e.w(q, b - c) - e.w(q, z - y);
}

double potential_density_above(const ScaleEngine& e, double q, double c, double z, double y) {
  require_positive_q(q);
  if (z < c) throw DomainError("starting point must be >= c");
  if (y < c) return 0.0;
  return e.w(q, z - c) * std::exp(e.phi(q) * (c - y)) - e.w(q, z - y);
}

double potential_density_hit_level(const ScaleEngine& e, double q, double b, double z, double y) {
  require_positive_q(q);
  if (z > b) throw DomainError("starting point must be <= b");
  if (y > b) return 0.0;
  return e.remainder(q, z - y) - std::exp(e.phi(q) * (z - b)) * e.remainder(q, b - y);
}

double exit_exp_functional(const ScaleEngine& e, double q, double z, double b) {
  require_positive_q(q);
  if (z > b) throw DomainError("exit functional requires z <= b");
  double p = e.phi(q);
  if (z <= 0.0) return std::exp(p * z);
  if (std::isinf(b)) return e.remainder(q, z) * e.inv_phi_prime(q);
  return std::exp(p * z) - e.w(q, z) / e.w(q, b) * std::exp(p * b);
}

double exit_scale_functional(const ScaleEngine& e, double q, double z, double c, double b) {
  require_positive_q(q);
  if (!(c >= 0.0)) throw DomainError("exit scale functional requires c >= 0");
  if (!(c < b)) throw DomainError("exit scale functional requires c < b");
  if (z > b) throw DomainError("exit scale functional requires z <= b");
  if (z <= c) return e.w(q, z);
  if (std::isinf(b)) return std::exp(e.phi(q) * c) * e.remainder(q, z - c) - e.remainder(q, z);
  return e.w(q, z) - e.w(q, z - c) / e.w(q, b - c) * e.w(q, b);
}

namespace {

double killed_literal(const ScaleEngine& e, double a, double q, double x, double y, KilledBranch branch) {
  auto W = [&](double s) { return e.w(q, s); };
  double p = e.phi(q);
  double v = W(-a - y) * std::exp(p * (x + a)) - W(x - y);
  if (branch == KilledBranch::up_to_minus_a) return v;
  double w2 = W(2 * a);
  double big = std::exp(2 * a * p);
  v += W(x + a) / w2 * (W(a - y) - W(-a - y) * big);
  if (branch == KilledBranch::up_to_plus_a) return v;
  double bracket = std::exp(p * (-a - y)) - W(a - y) / w2 - W(-a - y) * (e.inv_phi_prime(q) - big / w2);
  return v + W(x - a) * big * bracket;
}

double avoidance_literal(const ScaleEngine& e, double a, double q, double x, KilledBranch branch) {
  double p = e.phi(q);
  double h = -std::expm1(p * (a + x));
  if (branch == KilledBranch::up_to_minus_a) return h;
  double w2 = e.w(q, 2 * a);
  double big = std::exp(2 * a * p);
  h += e.w(q, x + a) * (big - 1.0) / w2;
  if (branch == KilledBranch::up_to_plus_a) return h;
  return h + e.w(q, x - a) * big * (e.inv_phi_prime(q) - (big - 1.0) / w2);
}

}  // namespace

double killed_resolvent_density(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double x,
                                double y, KilledBranch branch) {
  require_positive_q(q);
  const double a = cfg.a;
  if (branch != KilledBranch::automatic) return killed_literal(e, a, q, x, y, branch);

  auto R = [&](double s) { return e.remainder(q, s); };
  const double p = e.phi(q);
  if (x <= -a) {
    if (y >= -a) return 0.0;
    return R(x - y) - std::exp(p * (x + a)) * R(-a - y);
  }
  const double w2 = e.w(q, 2 * a);
  const double big = std::exp(2 * a * p);
  if (x <= a) {
    if (y >= a) return 0.0;
    return R(x - y) - std::exp(p * (x + a)) * R(-a - y) +
           e.w(q, x + a) / w2 * (big * R(-a - y) - R(a - y));
  }
  double lower = R(-a - y);
  double upper = R(a - y);
  return R(x - y) - R(x + a) / w2 * (big * lower - upper) -
         R(x - a) * big * (upper / w2 + lower * (e.inv_phi_prime(q) - big / w2));
}

double avoidance_probability(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double x,
                             KilledBranch branch) {
  require_positive_q(q);
  const double a = cfg.a;
  if (branch != KilledBranch::automatic) return avoidance_literal(e, a, q, x, branch);
  if (x <= a) return avoidance_literal(e, a, q, x, x <= -a ? KilledBranch::up_to_minus_a : KilledBranch::up_to_plus_a);
  const double p = e.phi(q);
  const double w2 = e.w(q, 2 * a);
  const double big_m1 = std::expm1(2 * a * p);
  return 1.0 - e.remainder(q, x + a) * big_m1 / w2 -
         e.remainder(q, x - a) * (big_m1 + 1.0) * (e.inv_phi_prime(q) - big_m1 / w2);
}

double local_time_weight(const ScaleEngine& e, const TwoPointConfig& cfg, double q, Endpoint which) {
  require_positive_q(q);
  const double two_a = 2 * cfg.a;
  const double p = e.phi(q);
  const double w2 = e.w(q, two_a);
  const double dp = e.phi_prime(q);
  if (which == Endpoint::minus) return dp * std::expm1(p * two_a) / w2;
  // 1 - Phi'(E - 1)/W(2a) rewritten as (Phi' - R(2a)) / W(2a).
  return std::exp(p * two_a) * (dp - e.remainder(q, two_a)) / w2;
}

}  // namespace twopoint
