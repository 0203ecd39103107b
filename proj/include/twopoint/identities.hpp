#pragma once

#include <string>
#include <vector>

#include "twopoint/killed_resolvent.hpp"

namespace twopoint {

struct CheckResult {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

// Each group returns one result per named check. The suites assume the
// two-point set {-a, a} of `cfg` and pick their sample points relative to a.

/// Inversion path against the closed form, W and W' on q in {0.5, 1, 2},
/// x in {0.1, 0.5, 1, 2, 3}. Empty when the model has no closed form.
std::vector<CheckResult> check_scale_accuracy(const ModelSpec& model, const InversionParams& params = {});
/// int e^{-theta x} W^(q)(x) dx = 1 / (psi(theta) - q).
std::vector<CheckResult> check_scale_transform(const ScaleEngine& e);
/// (beta - lambda) (W^(beta) * W^(lambda))(z) = W^(beta)(z) - W^(lambda)(z).
std::vector<CheckResult> check_convolution(const ScaleEngine& e);
/// psi(0) = 0, psi' against a central difference, convexity, Phi residual,
/// W monotone, W' against a central difference.
std::vector<CheckResult> check_model_basics(const ScaleEngine& e);

/// q int v_q(x, y) dy = h_q(x) on 15 (q, x) pairs.
std::vector<CheckResult> check_mass(const ScaleEngine& e, const TwoPointConfig& cfg);
/// int v_q(x, y) v_r(y, z) dy = (v_q(x, z) - v_r(x, z)) / (r - q).
std::vector<CheckResult> check_resolvent_equation(const ScaleEngine& e, const TwoPointConfig& cfg);
/// Branch agreement, nonnegativity, and the two expressions of the local
/// time weights.
std::vector<CheckResult> check_killed_consistency(const ScaleEngine& e, const TwoPointConfig& cfg);

/// beta int (entrance density) = excursion Laplace functional, per side.
std::vector<CheckResult> check_entrance_mass(const ScaleEngine& e, const TwoPointConfig& cfg);
/// int d eta_beta(y) v_gamma(y, z) dy = (d eta_gamma(z) - d eta_beta(z)) / (beta - gamma).
std::vector<CheckResult> check_entrance_resolvent(const ScaleEngine& e, const TwoPointConfig& cfg);

/// The conditioned resolvent from a - / + 10^{-k}, k = 2, 3, 4, against the
/// boundary limits: errors must shrink and end below 1e-3 relative.
std::vector<CheckResult> check_boundary_limits(const ScaleEngine& e, const TwoPointConfig& cfg);
/// The four denominators are positive and nondecreasing on q in {0.5, 1, 2, 4}.
std::vector<CheckResult> check_denominators(const ScaleEngine& e, const TwoPointConfig& cfg);

/// Last-visit reduction at z = x, total mass at lambda = 0, split sums,
/// decomposition over the first point hit, monotonicity in lambda.
std::vector<CheckResult> check_reductions(const ScaleEngine& e, const TwoPointConfig& cfg);

/// Everything above.
std::vector<CheckResult> check_identities(const ModelSpec& model, const TwoPointConfig& cfg,
                                          const InversionParams& params = {});

}  // namespace twopoint
