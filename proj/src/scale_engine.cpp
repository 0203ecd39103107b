#include "twopoint/scale_engine.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <utility>

#include "twopoint/errors.hpp"
#include "twopoint/special.hpp"

namespace twopoint {

namespace {

using cplx = std::complex<double>;

struct BrownianRoots {
  double delta;  // sqrt(gamma^2 + 2 q sigma^2)
  double phi;    // positive root of psi(lambda) = q
  double zeta;   // minus the negative root
};

BrownianRoots brownian_roots(const ModelSpec& m, double q) {
  double s2 = m.sigma() * m.sigma();
  double g = m.gamma();
  double delta = std::sqrt(g * g + 2.0 * q * s2);
  double phi = g > 0.0 ? 2.0 * q / (delta + g) : (delta - g) / s2;
  double zeta = g < 0.0 ? 2.0 * q / (delta - g) : (delta + g) / s2;
  return {delta, phi, zeta};
}

// Newton on the increasing convex branch, bracketed by [lo, hi] with
// psi(lo) <= target <= psi(hi).
double newton_on_branch(const ModelSpec& m, double target, double lo, double hi) {
  auto f = [&](double x) { return std::make_pair(m.psi(x) - target, m.psi_prime(x)); };
  std::uintmax_t iters = 200;
  double root = boost::math::tools::newton_raphson_iterate(
      f, hi, lo, hi, std::numeric_limits<double>::digits - 3, iters);
  double residual = std::abs(m.psi(root) - target);
  double allowed = 1e-12 * std::max(1.0, std::abs(target)) +
                   8.0 * std::numeric_limits<double>::epsilon() * root * std::abs(m.psi_prime(root));
  if (!(residual <= allowed))
    throw NumericalFault("root of psi(lambda) = " + std::to_string(target) + " not resolved", residual);
  return root;
}

}  // namespace

ScaleEngine::ScaleEngine(ModelSpec model, InversionParams params, ScaleMethod method)
    : model_(std::move(model)), params_(params), method_(method) {
  ValidityReport report = validate(model_);
  if (!report.valid) throw DomainError("model rejected: " + report.message);
  if (!(params_.tol > 0.0) || params_.max_terms < 32 || !(params_.contour_eps > 0.0 && params_.contour_eps < 1.0))
    throw DomainError("inversion parameters out of range");

  if (method_ != ScaleMethod::inversion) {
    if (model_.is_brownian())
      closed_ = ClosedForm::brownian;
    else if (model_.is_pure_stable())
      closed_ = ClosedForm::stable;
    else if (method_ == ScaleMethod::closed_form)
      throw UnsupportedCase("no closed-form scale function for model " + model_.describe());
  }

  if (closed_ == ClosedForm::brownian) {
    phi_zero_ = brownian_roots(model_, 0.0).phi;
  } else if (closed_ == ClosedForm::stable || model_.psi_prime(0.0) >= 0.0) {
    phi_zero_ = 0.0;
  } else {
    double hi = 1.0;
    while (model_.psi(hi) <= 0.0) hi *= 2.0;
    double lo = 0.5 * hi;
    while (model_.psi(lo) >= 0.0) lo *= 0.5;
    phi_zero_ = newton_on_branch(model_, 0.0, lo, hi);
  }
}

double ScaleEngine::solve_phi(double q) const {
  if (closed_ == ClosedForm::brownian) return brownian_roots(model_, q).phi;
  if (closed_ == ClosedForm::stable) {
    const auto& j = std::get<StableJumps>(model_.jumps());
    return std::pow(q / j.c, 1.0 / j.alpha);
  }
  double lo = phi_zero_;
  double hi = phi_zero_ + std::max(1.0, q / model_.psi_prime(phi_zero_ + 1.0));
  while (model_.psi(hi) <= q) {
    lo = hi;
    hi = phi_zero_ + 2.0 * (hi - phi_zero_);
  }
  return newton_on_branch(model_, q, lo, hi);
}

double ScaleEngine::phi_zero() const { return phi_zero_; }

double ScaleEngine::phi(double q) const {
  if (!(q > 0.0)) throw DomainError("phi: q must be > 0");
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = phi_cache_.find(q); it != phi_cache_.end()) return it->second;
  }
  double value = solve_phi(q);
  std::unique_lock lock(cache_mutex_);
  phi_cache_.emplace(q, value);
  return value;
}

double ScaleEngine::phi_nonneg(double q) const {
  if (q == 0.0) return phi_zero_;
  return phi(q);
}

double ScaleEngine::inv_phi_prime(double q) const {
  if (!(q >= 0.0)) throw DomainError("q must be >= 0");
  if (closed_ == ClosedForm::brownian) return brownian_roots(model_, q).delta;
  return model_.psi_prime(phi_nonneg(q));
}

double ScaleEngine::phi_prime(double q) const {
  if (!(q > 0.0)) throw DomainError("phi_prime: q must be > 0");
  return 1.0 / inv_phi_prime(q);
}

double ScaleEngine::tilted_w(double q, double x) const {
  const double shift = phi_nonneg(q);
  auto F = [&](cplx theta) { return 1.0 / (model_.psi(theta + shift) - q); };
  return euler_invert(F, x, params_).value;
}

double ScaleEngine::tilted_w_prime(double q, double x) const {
  const double shift = phi_nonneg(q);
  auto F = [&](cplx theta) { return theta / (model_.psi(theta + shift) - q); };
  return euler_invert(F, x, params_).value;
}

double ScaleEngine::w(double q, double x) const {
  if (!(q >= 0.0)) throw DomainError("w: q must be >= 0");
  if (!(x > 0.0)) return 0.0;
  switch (closed_) {
    case ClosedForm::brownian: {
      auto r = brownian_roots(model_, q);
      if (r.delta == 0.0) return 2.0 * x / (model_.sigma() * model_.sigma());
      return -std::exp(r.phi * x) * std::expm1(-(r.phi + r.zeta) * x) / r.delta;
    }
    case ClosedForm::stable: {
      const auto& j = std::get<StableJumps>(model_.jumps());
      if (q == 0.0) return std::pow(x, j.alpha - 1.0) / (j.c * std::tgamma(j.alpha));
      double z = q / j.c * std::pow(x, j.alpha);
      return std::pow(x, j.alpha - 1.0) * mittag_leffler(j.alpha, j.alpha, z) / j.c;
    }
    case ClosedForm::none:
      break;
  }
  return std::exp(phi_nonneg(q) * x) * tilted_w(q, x);
}

double ScaleEngine::w_prime(double q, double x) const {
  if (!(q >= 0.0)) throw DomainError("w_prime: q must be >= 0");
  if (!(x > 0.0)) throw DomainError("w_prime: x must be > 0");
  switch (closed_) {
    case ClosedForm::brownian: {
      auto r = brownian_roots(model_, q);
      if (r.delta == 0.0) return 2.0 / (model_.sigma() * model_.sigma());
      return (r.phi * std::exp(r.phi * x) + r.zeta * std::exp(-r.zeta * x)) / r.delta;
    }
    case ClosedForm::stable: {
      const auto& j = std::get<StableJumps>(model_.jumps());
      if (q == 0.0)
        return (j.alpha - 1.0) * std::pow(x, j.alpha - 2.0) / (j.c * std::tgamma(j.alpha));
      double z = q / j.c * std::pow(x, j.alpha);
      return std::pow(x, j.alpha - 2.0) * mittag_leffler(j.alpha, j.alpha - 1.0, z) / j.c;
    }
    case ClosedForm::none:
      break;
  }
  if (x < 1e-6) throw DomainError("w_prime: inversion path requires x >= 1e-6");
  double shift = phi_nonneg(q);
  return std::exp(shift * x) * (shift * tilted_w(q, x) + tilted_w_prime(q, x));
}

double ScaleEngine::u_density(double q, double y) const {
  if (!(q > 0.0)) throw DomainError("u_density: q must be > 0");
  return remainder(q, -y);
}

double ScaleEngine::remainder_by_inversion(double q, double s, bool derivative) const {
  const double p = phi(q);
  const double dp = phi_prime(q);
  double c = -std::log(params_.contour_eps) / (2.0 * detail::kLattice * s);
  double abscissa = -1.0;
  if (c > 0.8 * p && c < 1.25 * p) abscissa = c < p ? 0.8 * p : 1.25 * p;
  if (derivative) {
    auto U = [&](cplx theta) { return theta * (dp / (theta - p) - 1.0 / (model_.psi(theta) - q)) - dp; };
    return euler_invert(U, s, params_, abscissa).value;
  }
  auto U = [&](cplx theta) { return dp / (theta - p) - 1.0 / (model_.psi(theta) - q); };
  return euler_invert(U, s, params_, abscissa).value;
}

double ScaleEngine::remainder(double q, double s) const {
  double ipp = inv_phi_prime(q);
  if (!(ipp > 0.0)) throw DomainError("remainder: Phi'(q) is infinite");
  if (std::isinf(s)) return 0.0;
  double p = phi_nonneg(q);
  if (s <= 0.0) return std::exp(p * s) / ipp;
  switch (closed_) {
    case ClosedForm::brownian: {
      auto r = brownian_roots(model_, q);
      return std::exp(-r.zeta * s) / r.delta;
    }
    case ClosedForm::stable: {
      const auto& j = std::get<StableJumps>(model_.jumps());
      double z = q / j.c * std::pow(s, j.alpha);
      if (z > kMittagLefflerSeriesLimit)
        return -std::pow(s, j.alpha - 1.0) * mittag_leffler_remainder(j.alpha, j.alpha, z) / j.c;
      break;
    }
    case ClosedForm::none:
      if (q > 0.0 && p * s > 2.0) return remainder_by_inversion(q, s, false);
      break;
  }
  return std::exp(p * s) / ipp - w(q, s);
}

double ScaleEngine::remainder_prime(double q, double s) const {
  double ipp = inv_phi_prime(q);
  if (!(ipp > 0.0)) throw DomainError("remainder_prime: Phi'(q) is infinite");
  if (s == 0.0) throw DomainError("remainder_prime: undefined at 0");
  if (std::isinf(s)) return 0.0;
  double p = phi_nonneg(q);
  if (s < 0.0) return p * std::exp(p * s) / ipp;
  switch (closed_) {
    case ClosedForm::brownian: {
      auto r = brownian_roots(model_, q);
      return -r.zeta * std::exp(-r.zeta * s) / r.delta;
    }
    case ClosedForm::stable: {
      const auto& j = std::get<StableJumps>(model_.jumps());
      double z = q / j.c * std::pow(s, j.alpha);
      if (z > kMittagLefflerSeriesLimit)
        return -std::pow(s, j.alpha - 2.0) * mittag_leffler_remainder(j.alpha, j.alpha - 1.0, z) / j.c;
      break;
    }
    case ClosedForm::none:
      if (q > 0.0 && p * s > 2.0) return remainder_by_inversion(q, s, true);
      break;
  }
  return p * std::exp(p * s) / ipp - w_prime(q, s);
}

InversionParams inversion_params_from_config(const KeyValueConfig& cfg) {
  InversionParams p;
  p.tol = cfg.get_double("inversion.tol", p.tol);
  p.max_terms = static_cast<int>(cfg.get_int("inversion.max_terms", p.max_terms));
  p.contour_eps = cfg.get_double("inversion.contour_eps", p.contour_eps);
  return p;
}

}  // namespace twopoint
