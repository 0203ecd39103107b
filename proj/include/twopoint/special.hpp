#pragma once

namespace twopoint {

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z >= 0
/// and alpha in (1, 2), beta > 0.
///
/// Power series up to z = 15; beyond that the exponential part plus the
/// integral remainder below.
double mittag_leffler(double alpha, double beta, double z);

/// E_{alpha,beta}(z) - z^{(1-beta)/alpha} exp(z^{1/alpha}) / alpha, the
/// subexponential part, for z >= 0.
///
/// For large z it is evaluated from
///   (1/pi) int_0^inf s^{alpha-beta} e^{-s}
///       (s^alpha sin(pi(1-beta)) - z sin(pi(1-beta+alpha)))
///       / (s^{2 alpha} - 2 s^alpha z cos(pi alpha) + z^2) ds,
/// so it stays accurate where E itself is dominated by the exponential.
double mittag_leffler_remainder(double alpha, double beta, double z);

inline constexpr double kMittagLefflerSeriesLimit = 15.0;

}  // namespace twopoint
