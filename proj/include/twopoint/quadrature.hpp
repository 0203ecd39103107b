#pragma once

#include <functional>
#include <vector>

namespace twopoint {

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// Either end may be infinite; half-lines are mapped onto [0, 1). Interior
/// `breakpoints` (kinks, jumps) start out as panel boundaries. Refinement
/// bisects the panel with the largest error estimate until the total
/// estimate is below max(abs_tol, rel_tol |value|) or the panel budget is
/// spent; the final estimate is reported either way.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::vector<double> breakpoints = {}, const QuadratureOptions& opts = {});

}  // namespace twopoint
