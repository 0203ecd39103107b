#pragma once

#include "twopoint/killed_resolvent.hpp"

namespace twopoint {

/// Which excursions from {-a, a} to account for. Excursions leaving -a split
/// into those that start by creeping downward (`down_start`, only possible
/// with a Gaussian component) and those that start upward (`up_start`).
enum class ExcursionPart { total, down_start, up_start };

/// Density in y of the beta-Laplace transform (in time) of the entrance law
/// of excursions from `side`, with the local time normalized so that its
/// 1-potential equals E[e^{-rho}].
///
/// Excursions from +a are only available without a Gaussian component;
/// asking for them with sigma > 0 throws UnsupportedCase.
double entrance_density(const ScaleEngine& e, const TwoPointConfig& cfg, double beta, double y,
                        Endpoint side, ExcursionPart part = ExcursionPart::total);

/// Excursion-measure functional 1 - E[e^{-q rho}] for excursions from `side`
/// (equal to 1 at q = 1 by the normalization).
double excursion_laplace(const ScaleEngine& e, const TwoPointConfig& cfg, double q, Endpoint side);

/// The same functional for excursions from -a restricted to `part`.
double excursion_laplace_split(const ScaleEngine& e, const TwoPointConfig& cfg, double q,
                               ExcursionPart part);

}  // namespace twopoint
