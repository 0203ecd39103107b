#pragma once

#include <limits>

#include "twopoint/scale_engine.hpp"

namespace twopoint {

/// The two-point set {-a, a}.
struct TwoPointConfig {
  double a;

  explicit TwoPointConfig(double half_width);
};

enum class Endpoint { plus, minus };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// q-potential density at y of X started at z in [c, b], killed on leaving
/// [c, b].
double potential_density_interval(const ScaleEngine& e, double q, double c, double b, double z,
                                  double y);
/// Same, killed on going below c (z >= c).
double potential_density_above(const ScaleEngine& e, double q, double c, double z, double y);
/// Same, killed on hitting b from below (z <= b).
double potential_density_hit_level(const ScaleEngine& e, double q, double b, double z, double y);

/// E^z[exp(-q tau_0^- + Phi(q) X at tau_0^-); tau_0^- < tau_b^+], b may be
/// kInfinity.
double exit_exp_functional(const ScaleEngine& e, double q, double z, double b);
/// E^z[W^(q)(X at tau_c^-) e^{-q tau_c^-}; tau_c^- < tau_b^+] for
/// 0 <= c < b, b may be kInfinity.
double exit_scale_functional(const ScaleEngine& e, double q, double z, double c, double b);

/// Which of the three displayed expressions to evaluate. `automatic` picks
/// by x and uses the cancellation-free rewrite; the others evaluate the
/// literal scale-function expression and exist to test that the branches
/// agree where they overlap.
enum class KilledBranch { automatic, general, up_to_plus_a, up_to_minus_a };

/// Density v_q(x, y) of the q-resolvent of X killed on hitting {-a, a}.
double killed_resolvent_density(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double x,
                                double y, KilledBranch branch = KilledBranch::automatic);

/// h_q(x) = P^x(hitting time of {-a, a} > independent Exp(q) time).
double avoidance_probability(const ScaleEngine& e, const TwoPointConfig& cfg, double q, double x,
                             KilledBranch branch = KilledBranch::automatic);

/// Local-time weights alpha_{+a}(q), alpha_{-a}(q) relating the local time at
/// {-a, a} to the local times at the two points.
double local_time_weight(const ScaleEngine& e, const TwoPointConfig& cfg, double q, Endpoint which);

}  // namespace twopoint
