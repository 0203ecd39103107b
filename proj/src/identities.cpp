#include "twopoint/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "twopoint/conditioned_process.hpp"
#include "twopoint/entrance_laws.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/last_visit.hpp"
#include "twopoint/quadrature.hpp"

namespace twopoint {

namespace {

using Clock = std::chrono::steady_clock;

double rel_diff(double value, double reference) {
  double scale = std::abs(reference);
  return std::abs(value - reference) / (scale > 0.0 ? scale : 1.0);
}

// Like std::max, but a NaN on either side wins.
double worse(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::quiet_NaN();
  return std::max(a, b);
}

// Runs `measure`, which returns the worst error over its sample, and packs
// the outcome. Exceptions count as a failed check with infinite error.
CheckResult run_check(const std::string& name, double tolerance, const std::function<double()>& measure) {
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  auto start = Clock::now();
  try {
    r.error = measure();
  } catch (const std::exception&) {
    r.error = std::numeric_limits<double>::infinity();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.passed = r.error <= tolerance;
  return r;
}

void append(std::vector<CheckResult>& into, std::vector<CheckResult> more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

const char* side_name(BoundaryApproach side) {
  switch (side) {
    case BoundaryApproach::up_to_minus_a:
      return "up_to_minus_a";
    case BoundaryApproach::down_to_minus_a:
      return "down_to_minus_a";
    case BoundaryApproach::up_to_a:
      return "up_to_a";
    case BoundaryApproach::down_to_a:
      return "down_to_a";
  }
  return "?";
}

constexpr BoundaryApproach kSides[] = {BoundaryApproach::up_to_minus_a, BoundaryApproach::down_to_minus_a,
                                       BoundaryApproach::up_to_a, BoundaryApproach::down_to_a};

// Breakpoints for integrals in y of v(x, y) or entrance densities.
std::vector<double> kinks(double a, std::initializer_list<double> extra) {
  std::vector<double> k{-a, a};
  k.insert(k.end(), extra);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

}  // namespace

std::vector<CheckResult> check_scale_accuracy(const ModelSpec& model, const InversionParams& params) {
  if (!model.is_brownian() && !model.is_pure_stable()) return {};
  ScaleEngine closed(model, params, ScaleMethod::closed_form);
  ScaleEngine generic(model, params, ScaleMethod::inversion);
  auto worst = [&](bool derivative) {
    double err = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        double ref = derivative ? closed.w_prime(q, x) : closed.w(q, x);
        double got = derivative ? generic.w_prime(q, x) : generic.w(q, x);
        err = worse(err, rel_diff(got, ref));
      }
    return err;
  };
  return {run_check("scale inversion vs closed form W", 1e-8, [&] { return worst(false); }),
          run_check("scale inversion vs closed form W'", 1e-8, [&] { return worst(true); })};
}

std::vector<CheckResult> check_scale_transform(const ScaleEngine& e) {
  return {run_check("scale transform", 1e-6, [&] {
    double err = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double shift : {0.5, 1.0, 2.0}) {
        double theta = e.phi(q) + shift;
        // W e^{-theta x} in a form that stays finite for large x.
        double slope = e.phi_prime(q);
        auto f = [&](double x) { return std::exp(-shift * x) * slope - std::exp(-theta * x) * e.remainder(q, x); };
        double got = integrate(f, 0.0, kInfinity).value;
        err = worse(err, rel_diff(got, 1.0 / (e.model().psi(theta) - q)));
      }
    return err;
  })};
}

std::vector<CheckResult> check_convolution(const ScaleEngine& e) {
  return {run_check("scale convolution", 1e-8, [&] {
    double err = 0.0;
    for (auto [beta, lambda] : {std::pair{2.0, 1.0}, std::pair{3.0, 0.5}})
      for (double z : {0.5, 1.0, 2.0}) {
        auto f = [&](double s) { return e.w(beta, s) * e.w(lambda, z - s); };
        double conv = integrate(f, 0.0, z).value;
        err = worse(err, std::abs((beta - lambda) * conv - (e.w(beta, z) - e.w(lambda, z))));
      }
    return err;
  })};
}

std::vector<CheckResult> check_model_basics(const ScaleEngine& e) {
  const ModelSpec& m = e.model();
  std::vector<CheckResult> out;
  out.push_back(run_check("psi at zero", 0.0, [&] { return std::abs(m.psi(0.0)); }));
  out.push_back(run_check("psi' vs central difference", 1e-6, [&] {
    double err = 0.0;
    for (double l : {0.5, 1.0, 2.0, 5.0}) {
      double h = 1e-5 * l;
      err = worse(err, rel_diff(m.psi_prime(l), (m.psi(l + h) - m.psi(l - h)) / (2 * h)));
    }
    return err;
  }));
  out.push_back(run_check("psi convex", 0.0, [&] {
    double worst = 0.0;
    double prev_slope = -kInfinity;
    for (double l = 0.0; l < 6.0; l += 0.25) {
      double slope = (m.psi(l + 0.25) - m.psi(l)) / 0.25;
      worst = std::max(worst, prev_slope - slope);
      prev_slope = slope;
    }
    return worst;
  }));
  out.push_back(run_check("Phi residual", 1e-12, [&] {
    double err = 0.0;
    for (double q : {0.25, 0.5, 1.0, 2.0, 8.0})
      err = worse(err, std::abs(m.psi(e.phi(q)) - q) / std::max(1.0, q));
    return err;
  }));
  out.push_back(run_check("W nondecreasing", 0.0, [&] {
    double worst = 0.0;
    for (double q : {0.0, 1.0})
      for (double x = 0.0, prev = 0.0; x <= 3.0; x += 0.05) {
        double w = e.w(q, x);
        worst = std::max(worst, prev - w);
        prev = w;
      }
    return worst;
  }));
  out.push_back(run_check("W' vs central difference", 1e-6, [&] {
    double err = 0.0;
    for (double q : {0.5, 1.0})
      for (double x : {0.25, 0.5, 1.0, 2.0}) {
        double h = std::max(1e-7, 1e-7 * x);
        err = worse(err, rel_diff(e.w_prime(q, x), (e.w(q, x + h) - e.w(q, x - h)) / (2 * h)));
      }
    return err;
  }));
  return out;
}

std::vector<CheckResult> check_mass(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  return {run_check("killed resolvent mass", 1e-6, [&] {
    double err = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double x : {-2 * a, -0.5 * a, 0.0, 1.2 * a, 3 * a}) {
        auto f = [&](double y) { return killed_resolvent_density(e, cfg, q, x, y); };
        double mass = integrate(f, -kInfinity, kInfinity, kinks(a, {x})).value;
        err = worse(err, std::abs(q * mass - avoidance_probability(e, cfg, q, x)));
      }
    return err;
  })};
}

std::vector<CheckResult> check_resolvent_equation(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  const double q = 1.0, r = 2.0;
  return {run_check("killed resolvent equation", 1e-4, [&] {
    double err = 0.0;
    for (auto [x, z] : {std::pair{-2 * a, -3 * a}, std::pair{0.0, 0.4 * a}, std::pair{0.0, -1.6 * a},
                        std::pair{1.2 * a, 0.6 * a}, std::pair{3 * a, 2.2 * a}, std::pair{3 * a, -1.6 * a}}) {
      auto f = [&](double y) {
        double first = killed_resolvent_density(e, cfg, q, x, y);
        return first == 0.0 ? 0.0 : first * killed_resolvent_density(e, cfg, r, y, z);
      };
      double lhs = integrate(f, -kInfinity, kInfinity, kinks(a, {x, z})).value;
      double rhs = (killed_resolvent_density(e, cfg, q, x, z) - killed_resolvent_density(e, cfg, r, x, z)) / (r - q);
      err = worse(err, std::abs(lhs - rhs));
    }
    return err;
  })};
}

std::vector<CheckResult> check_killed_consistency(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  std::vector<CheckResult> out;
  const double ys[] = {-3 * a, -1.4 * a, -0.6 * a, 0.4 * a, 0.9 * a, 1.4 * a, 4 * a};
  out.push_back(run_check("killed resolvent branch agreement", 1e-12, [&] {
    double err = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double x : {-2 * a, -a, -0.5 * a, 0.0, 0.6 * a, a})
        for (double y : ys) {
          double general = killed_resolvent_density(e, cfg, q, x, y, KilledBranch::general);
          double narrow = killed_resolvent_density(
              e, cfg, q, x, y, x <= -a ? KilledBranch::up_to_minus_a : KilledBranch::up_to_plus_a);
          err = worse(err, std::abs(general - narrow) / std::max(1.0, std::abs(general)));
          double h_general = avoidance_probability(e, cfg, q, x, KilledBranch::general);
          double h_narrow = avoidance_probability(
              e, cfg, q, x, x <= -a ? KilledBranch::up_to_minus_a : KilledBranch::up_to_plus_a);
          err = worse(err, std::abs(h_general - h_narrow));
        }
    return err;
  }));
  out.push_back(run_check("killed resolvent nonnegative", 1e-12, [&] {
    double worst = 0.0;
    for (double q : {0.5, 1.0, 2.0})
      for (double x : {-2 * a, -0.5 * a, 0.0, 0.6 * a, 1.2 * a, 3 * a}) {
        for (double y : ys) worst = std::max(worst, -killed_resolvent_density(e, cfg, q, x, y));
        double h = avoidance_probability(e, cfg, q, x);
        worst = std::max({worst, -h, h - 1.0});
      }
    return worst;
  }));
  out.push_back(run_check("local time weights, exit-time form", 1e-12, [&] {
    double err = 0.0;
    for (double q : {0.5, 1.0, 2.0}) {
      double p = e.phi(q), two_a = 2 * a;
      double hit_below = std::exp(p * two_a) - e.w(q, two_a) / e.phi_prime(q);
      double minus = -std::expm1(-p * two_a) / (1.0 - hit_below * std::exp(-p * two_a));
      err = worse(err, rel_diff(local_time_weight(e, cfg, q, Endpoint::minus), minus));
      double plus = std::exp(p * two_a) * (1.0 - e.phi_prime(q) / e.w(q, two_a) * std::expm1(p * two_a));
      err = worse(err, rel_diff(local_time_weight(e, cfg, q, Endpoint::plus), plus));
    }
    return err;
  }));
  return out;
}

std::vector<CheckResult> check_entrance_mass(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  std::vector<CheckResult> out;
  std::vector<std::pair<const char*, Endpoint>> sides{{"entrance mass, excursions from -a", Endpoint::minus}};
  if (e.model().sigma() == 0.0) sides.push_back({"entrance mass, excursions from +a", Endpoint::plus});
  for (auto [name, side] : sides)
    out.push_back(run_check(name, 1e-6, [&, side] {
      double err = 0.0;
      for (double beta : {0.5, 1.0, 2.0}) {
        auto f = [&](double y) { return entrance_density(e, cfg, beta, y, side); };
        double mass = integrate(f, -kInfinity, kInfinity, kinks(a, {})).value;
        err = worse(err, std::abs(beta * mass - excursion_laplace(e, cfg, beta, side)));
      }
      return err;
    }));
  out.push_back(run_check("entrance split sums", 1e-12, [&] {
    double err = 0.0;
    for (double beta : {0.5, 1.0, 2.0})
      for (double y : {-3 * a, -1.2 * a, 0.0, 0.5 * a}) {
        double total = entrance_density(e, cfg, beta, y, Endpoint::minus, ExcursionPart::total);
        double down = entrance_density(e, cfg, beta, y, Endpoint::minus, ExcursionPart::down_start);
        double up = entrance_density(e, cfg, beta, y, Endpoint::minus, ExcursionPart::up_start);
        err = worse(err, std::abs(down + up - total));
      }
    return err;
  }));
  out.push_back(run_check("entrance densities nonnegative", 1e-12, [&] {
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0})
      for (double y : {-3 * a, -1.2 * a, -0.5 * a, 0.0, 0.5 * a, 1.5 * a}) {
        for (auto part : {ExcursionPart::total, ExcursionPart::down_start, ExcursionPart::up_start})
          worst = std::max(worst, -entrance_density(e, cfg, beta, y, Endpoint::minus, part));
        if (e.model().sigma() == 0.0) worst = std::max(worst, -entrance_density(e, cfg, beta, y, Endpoint::plus));
      }
    return worst;
  }));
  return out;
}

std::vector<CheckResult> check_entrance_resolvent(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  const double beta = 1.0, gamma = 2.0;
  std::vector<CheckResult> out;
  std::vector<std::pair<const char*, Endpoint>> sides{{"entrance-resolvent, excursions from -a", Endpoint::minus}};
  if (e.model().sigma() == 0.0) sides.push_back({"entrance-resolvent, excursions from +a", Endpoint::plus});
  for (auto [name, side] : sides)
    out.push_back(run_check(name, 1e-4, [&, side] {
      double err = 0.0;
      for (double z : {-1.6 * a, 0.0, 0.6 * a, 2.4 * a}) {
        auto f = [&](double y) {
          double d = entrance_density(e, cfg, beta, y, side);
          return d == 0.0 ? 0.0 : d * killed_resolvent_density(e, cfg, gamma, y, z);
        };
        double lhs = integrate(f, -kInfinity, kInfinity, kinks(a, {z})).value;
        double rhs = (entrance_density(e, cfg, gamma, z, side) - entrance_density(e, cfg, beta, z, side)) /
                     (beta - gamma);
        err = worse(err, std::abs(lhs - rhs));
      }
      return err;
    }));
  return out;
}

std::vector<CheckResult> check_boundary_limits(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  const double q = 1.0, beta = 1.0;
  // Weight below -a, inside (-a, a) and above a, vanishing near -a and a.
  std::vector<double> nodes;
  for (double n : {-2.4, -1.8, -1.4, -1.2, -0.8, -0.4, 0.2, 0.6, 0.8, 1.2, 1.6, 2.4}) nodes.push_back(n * a);
  GridFunction g(nodes, {0.0, 1.0, 0.5, 0.0, 0.0, 0.7, 1.0, 0.2, 0.0, 0.0, 0.6, 0.0});
  std::vector<CheckResult> out;
  for (BoundaryApproach side : kSides) {
    out.push_back(run_check(std::string("boundary limit ") + side_name(side), 1e-3, [&, side] {
      double limit = boundary_limit(e, cfg, q, beta, g, side);
      bool at_minus = side == BoundaryApproach::up_to_minus_a || side == BoundaryApproach::down_to_minus_a;
      bool from_below = side == BoundaryApproach::up_to_minus_a || side == BoundaryApproach::up_to_a;
      double previous = kInfinity;
      double err = 0.0;
      for (double offset : {1e-2, 1e-3, 1e-4}) {
        double x = (at_minus ? -a : a) + (from_below ? -offset : offset) * a;
        err = rel_diff(conditioned_resolvent(e, cfg, q, beta, x, g), limit);
        // A sequence that does not shrink fails regardless of its last value.
        if (!(err < previous)) return kInfinity;
        previous = err;
      }
      return err;
    }));
  }
  return out;
}

std::vector<CheckResult> check_denominators(const ScaleEngine& e, const TwoPointConfig& cfg) {
  std::vector<CheckResult> out;
  for (BoundaryApproach side : kSides)
    out.push_back(run_check(std::string("denominator positive, nondecreasing ") + side_name(side), 0.0, [&, side] {
      double worst = 0.0, prev = 0.0;
      for (double q : {0.5, 1.0, 2.0, 4.0}) {
        double h = boundary_denominator(e, cfg, q, side);
        worst = std::max({worst, -h, prev - h});
        prev = h;
      }
      return worst;
    }));
  return out;
}

std::vector<CheckResult> check_reductions(const ScaleEngine& e, const TwoPointConfig& cfg) {
  const double a = cfg.a;
  const double lo = -a, hi = a;
  std::vector<CheckResult> out;
  out.push_back(run_check("last visit from x", 1e-12, [&] {
    double err = 0.0;
    for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
      double gap = hi - lo;
      double expected = e.w(0.0, gap) / e.w(lambda, gap) * std::exp(-e.phi_zero() * gap);
      err = worse(err, rel_diff(last_visit_laplace(e, lambda, lo, lo, hi), expected));
    }
    return err;
  }));
  if (e.phi_zero() == 0.0)
    out.push_back(run_check("last visit total mass", 1e-10, [&] {
      double err = 0.0;
      // Above y a process drifting to +inf may never come back down.
      const double drift = e.model().psi_prime(0.0);
      for (double z : {-3 * a, -a, -0.2 * a, 0.5 * a, a, 2 * a, 4 * a}) {
        double mass = z <= hi ? 1.0 : 1.0 - drift * e.w(0.0, z - hi);
        err = worse(err, std::abs(last_visit_laplace(e, 0.0, z, lo, hi) - mass));
      }
      return err;
    }));
  out.push_back(run_check("excursion split sums", 1e-12, [&] {
    double err = 0.0;
    for (double q : {0.5, 1.0, 2.0, 4.0}) {
      double down = excursion_laplace_split(e, cfg, q, ExcursionPart::down_start);
      double up = excursion_laplace_split(e, cfg, q, ExcursionPart::up_start);
      err = worse(err, rel_diff(down + up, excursion_laplace(e, cfg, q, Endpoint::minus)));
    }
    return err;
  }));
  out.push_back(run_check("last visit decomposition", 1e-10, [&] {
    double err = 0.0;
    for (double lambda : {0.5, 1.0})
      for (double z : {-2 * a, 0.0, 0.4 * a}) {
        double direct = first_hit_laplace(e, cfg, lambda, z, Endpoint::plus);
        double via = first_hit_laplace(e, cfg, 0.0, z, Endpoint::minus);
        double expected = direct + via * last_visit_laplace(e, lambda, lo, lo, hi);
        err = worse(err, std::abs(last_visit_laplace(e, lambda, z, lo, hi) - expected));
      }
    return err;
  }));
  out.push_back(run_check("last visit bounded, nonincreasing in lambda", 1e-12, [&] {
    double worst = 0.0;
    for (double z : {-2 * a, 0.0, 0.4 * a}) {
      double prev = last_visit_laplace(e, 0.0, z, lo, hi);
      worst = std::max({worst, prev - 1.0});
      for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        double v = last_visit_laplace(e, lambda, z, lo, hi);
        worst = std::max({worst, v - prev, -v});
        prev = v;
      }
    }
    return worst;
  }));
  return out;
}

std::vector<CheckResult> check_identities(const ModelSpec& model, const TwoPointConfig& cfg,
                                          const InversionParams& params) {
  ScaleEngine e(model, params);
  std::vector<CheckResult> all;
  append(all, check_model_basics(e));
  append(all, check_scale_accuracy(model, params));
  append(all, check_scale_transform(e));
  append(all, check_convolution(e));
  append(all, check_mass(e, cfg));
  append(all, check_resolvent_equation(e, cfg));
  append(all, check_killed_consistency(e, cfg));
  append(all, check_entrance_mass(e, cfg));
  append(all, check_entrance_resolvent(e, cfg));
  append(all, check_boundary_limits(e, cfg));
  append(all, check_denominators(e, cfg));
  append(all, check_reductions(e, cfg));
  return all;
}

}  // namespace twopoint
