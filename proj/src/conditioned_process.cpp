#include "twopoint/conditioned_process.hpp"

#include <algorithm>
#include <cmath>

#include "twopoint/errors.hpp"
#include "twopoint/quadrature.hpp"

namespace twopoint {

GridFunction::GridFunction(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2 || nodes_.size() != values_.size())
    throw DomainError("grid function needs at least two nodes and one value per node");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw DomainError("grid nodes must be strictly increasing");
}

GridFunction GridFunction::hat(double center, double half_width, double height) {
  if (!(half_width > 0.0)) throw DomainError("hat half-width must be > 0");
  return GridFunction({center - half_width, center, center + half_width}, {0.0, height, 0.0});
}

double GridFunction::operator()(double y) const {
  if (y < nodes_.front() || y > nodes_.back()) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), y);
  if (it == nodes_.end()) return values_.back();
  std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  double t = (y - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
  return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

namespace {

// g must vanish on a neighbourhood of each point of {-a, a}.
void check_support(const TwoPointConfig& cfg, const GridFunction& g) {
  const auto& nodes = g.nodes();
  for (double point : {-cfg.a, cfg.a}) {
    if (point < nodes.front() || point > nodes.back()) continue;
    auto hi = std::upper_bound(nodes.begin(), nodes.end(), point);
    auto lo = std::lower_bound(nodes.begin(), nodes.end(), point);
    std::size_t first = lo == nodes.begin() ? 0 : static_cast<std::size_t>(lo - nodes.begin()) - 1;
    std::size_t last = hi == nodes.end() ? nodes.size() - 1 : static_cast<std::size_t>(hi - nodes.begin());
    if (point == nodes.front() || point == nodes.back())
      throw DomainError("test function support must avoid -a and a");
    for (std::size_t i = first; i <= last; ++i)
      if (g.values()[i] != 0.0) throw DomainError("test function must vanish near -a and a");
  }
}

// Pieces of the limit numerators for killing rate r = beta + q.
struct KilledRate {
  double r, phi, inv_dphi, big, w2, w2_slope;
};

KilledRate killed_rate(const ScaleEngine& e, double a, double r) {
  return {r, e.phi(r), e.inv_phi_prime(r), std::exp(2 * a * e.phi(r)), e.w(r, 2 * a), e.w_prime(r, 2 * a)};
}

// (W_r)'(-a-y) - Phi(r) W_r(-a-y), via the remainder.
double creeping_numerator(const ScaleEngine& e, const KilledRate& k, double a, double y) {
  if (y >= -a) return 0.0;
  double s = -a - y;
  return k.phi * e.remainder(k.r, s) - e.remainder_prime(k.r, s);
}

// Minus the x-derivative of v_r(x, y) at x = a from the left.
double slope_numerator(const ScaleEngine& e, const KilledRate& k, double a, double y) {
  if (y > a) return 0.0;
  double ratio = k.w2_slope / k.w2;
  return -e.remainder_prime(k.r, a - y) + ratio * e.remainder(k.r, a - y) +
         k.big * (k.phi - ratio) * e.remainder(k.r, -a - y);
}

double numerator(const ScaleEngine& e, const KilledRate& k, double a, double y, BoundaryApproach side) {
  const double half_var = 0.5 * e.model().sigma() * e.model().sigma();
  switch (side) {
    case BoundaryApproach::up_to_minus_a:
      return creeping_numerator(e, k, a, y);
    case BoundaryApproach::down_to_minus_a: {
      double jump = y < a ? (k.big * e.remainder(k.r, -a - y) - e.remainder(k.r, a - y)) / k.w2 : 0.0;
      return jump - (half_var > 0.0 ? half_var * creeping_numerator(e, k, a, y) : 0.0);
    }
    case BoundaryApproach::up_to_a:
      return slope_numerator(e, k, a, y);
    case BoundaryApproach::down_to_a: {
      double above = k.big * (e.remainder(k.r, a - y) / k.w2 +
                              e.remainder(k.r, -a - y) * (k.inv_dphi - k.big / k.w2));
      return above - (half_var > 0.0 ? half_var * slope_numerator(e, k, a, y) : 0.0);
    }
  }
  return 0.0;
}

}  // namespace

double boundary_denominator(const ScaleEngine& e, const TwoPointConfig& cfg, double q,
                            BoundaryApproach side) {
  if (!(q > 0.0)) throw DomainError("q must be > 0");
  const double a = cfg.a;
  const double half_var = 0.5 * e.model().sigma() * e.model().sigma();
  const double p = e.phi(q);
  double value = 0.0;
  if (side == BoundaryApproach::up_to_minus_a) {
    value = p;
  } else {
    const double w2 = e.w(q, 2 * a);
    const double big_m1 = std::expm1(2 * a * p);
    const double slope = p * (big_m1 + 1.0) - big_m1 * e.w_prime(q, 2 * a) / w2;
    switch (side) {
      case BoundaryApproach::down_to_minus_a:
        value = big_m1 / w2 - half_var * p;
        break;
      case BoundaryApproach::up_to_a:
        value = slope;
        break;
      case BoundaryApproach::down_to_a:
        value = (big_m1 + 1.0) * (1.0 - e.inv_phi_prime(q) * e.remainder(q, 2 * a)) / w2 - half_var * slope;
        break;
      case BoundaryApproach::up_to_minus_a:
        break;
    }
  }
  if (!(value > 0.0)) throw NumericalFault("boundary denominator is not positive", value);
  return value;
}

double boundary_limit_density(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double beta,
                              double y, BoundaryApproach side) {
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (y == cfg.a || y == -cfg.a) throw DomainError("boundary limit density is undefined at -a and a");
  double h = boundary_denominator(e, cfg, q, side);
  KilledRate k = killed_rate(e, cfg.a, beta + q);
  return numerator(e, k, cfg.a, y, side) / h;
}

double boundary_limit(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double beta,
                      const GridFunction& g, BoundaryApproach side) {
  check_support(cfg, g);
  if (g.is_zero()) return 0.0;
  double h = boundary_denominator(e, cfg, q, side);
  KilledRate k = killed_rate(e, cfg.a, beta + q);
  auto f = [&](double y) {
    double gy = g(y);
    if (gy == 0.0) return 0.0;
    return avoidance_probability(e, cfg, q, y) * numerator(e, k, cfg.a, y, side) * gy;
  };
  return integrate(f, g.support_lo(), g.support_hi(), g.nodes()).value / h;
}

double conditioned_resolvent(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double beta,
                             double x, const GridFunction& g) {
  if (!(q > 0.0) || !(beta > 0.0)) throw DomainError("q and beta must be > 0");
  if (x == cfg.a || x == -cfg.a) throw DomainError("starting point must avoid -a and a");
  check_support(cfg, g);
  if (g.is_zero()) return 0.0;
  const double r = beta + q;
  auto f = [&](double y) {
    double gy = g(y);
    if (gy == 0.0) return 0.0;
    return killed_resolvent_density(e, cfg, r, x, y) * gy * avoidance_probability(e, cfg, q, y);
  };
  std::vector<double> breaks = g.nodes();
  breaks.push_back(x);
  double integral = integrate(f, g.support_lo(), g.support_hi(), breaks).value;
  return integral / avoidance_probability(e, cfg, q, x);
}

}  // namespace twopoint
