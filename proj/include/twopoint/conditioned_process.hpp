#pragma once

#include <vector>

#include "twopoint/killed_resolvent.hpp"

namespace twopoint {

/// Piecewise-linear test function: linear between nodes, zero outside.
class GridFunction {
 public:
  GridFunction(std::vector<double> nodes, std::vector<double> values);

  /// Tent of height `height` on [center - half_width, center + half_width].
  static GridFunction hat(double center, double half_width, double height = 1.0);

  double operator()(double y) const;
  double support_lo() const { return nodes_.front(); }
  double support_hi() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  bool is_zero() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// How the starting point approaches {-a, a}.
enum class BoundaryApproach {
  up_to_minus_a,    // x increases to -a
  down_to_minus_a,  // x decreases to -a
  up_to_a,          // x increases to a
  down_to_a,        // x decreases to a
};

/// Beta-resolvent of X killed at an independent Exp(q) time and conditioned
/// to avoid {-a, a} up to that time, applied to g, from x not in {-a, a}:
///   int v_{beta+q}(x, y) g(y) h_q(y) dy / h_q(x).
double conditioned_resolvent(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double beta,
                             double x, const GridFunction& g);

/// Density z(y) such that the conditioned resolvent tends to
/// int h_q(y) z(y) g(y) dy as x approaches the boundary from `side`.
double boundary_limit_density(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double beta,
                              double y, BoundaryApproach side);

/// The denominator H(q) of boundary_limit_density; positive and
/// nondecreasing in q. Throws NumericalFault if it is not positive.
double boundary_denominator(const ScaleEngine& e, const TwoPointConfig& cfg, double q,
                            BoundaryApproach side);

/// int h_q(y) z(y) g(y) dy, the limit value itself.
double boundary_limit(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double beta,
                      const GridFunction& g, BoundaryApproach side);

}  // namespace twopoint
