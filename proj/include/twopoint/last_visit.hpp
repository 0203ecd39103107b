#pragma once

#include "twopoint/killed_resolvent.hpp"

namespace twopoint {

/// E^x[e^{-lambda rho}; {-a, a} is first hit at `first`], lambda >= 0.
///
/// When lambda = 0 and psi'(0+) = 0, Phi'(0)^{-1} is taken as its limit 0;
/// when psi'(0+) < 0 it is psi'(Phi(0)).
double first_hit_laplace(const ScaleEngine& e, const TwoPointConfig& cfg, double lambda, double x,
                         Endpoint first);

/// E^z[exp(-lambda (T_y - S)); T_y < inf] where T_y is the hitting time of y
/// and S the last time at x before T_y (0 if x is not visited), x < y.
double last_visit_laplace(const ScaleEngine& e, double lambda, double z, double x, double y);

/// Expected local time at x accumulated before T_y, started at x (x < y).
double expected_local_time(const ScaleEngine& e, double x, double y);

}  // namespace twopoint
