#pragma once

#include <complex>
#include <string>
#include <variant>

#include "twopoint/config.hpp"

namespace twopoint {

struct NoJumps {};

/// Spectrally negative alpha-stable jumps, parameterized by the Laplace
/// exponent contribution c * lambda^alpha, alpha in (1, 2).
///
/// The Levy measure is Pi(dx) = c / Gamma(-alpha) |x|^{-1-alpha} dx on x < 0
/// with full compensation, so the jump part has mean zero.
struct StableJumps {
  double alpha;
  double c;
};

/// Exponentially tempered stable jumps:
///   c * ((lambda + theta)^alpha - theta^alpha - alpha theta^{alpha-1} lambda),
/// from Pi(dx) = c / Gamma(-alpha) e^{-theta|x|} |x|^{-1-alpha} dx on x < 0,
/// fully compensated. theta = 0 recovers StableJumps.
struct TemperedStableJumps {
  double alpha;
  double c;
  double theta;
};

/// Compound Poisson jumps of rate `rate` with Exp(mean `mean`) sizes, downward.
/// Contribution: rate * (1 / (1 + mean * lambda) - 1). Not compensated; the
/// linear coefficient gamma is the drift of the whole process.
struct CompoundPoissonExpJumps {
  double rate;
  double mean;
};

using JumpFamily = std::variant<NoJumps, StableJumps, TemperedStableJumps, CompoundPoissonExpJumps>;

/// A spectrally negative Levy process given by its Gaussian coefficient
/// sigma, linear coefficient gamma and a parametric jump family:
///
///   psi(lambda) = sigma^2 lambda^2 / 2 + gamma lambda + psi_jumps(lambda).
///
/// Immutable once constructed; parameter ranges are checked by the
/// constructor.
class ModelSpec {
 public:
  ModelSpec(double sigma, double gamma, JumpFamily jumps);

  static ModelSpec brownian(double sigma, double gamma = 0.0);
  static ModelSpec stable(double alpha, double c = 1.0);
  static ModelSpec tempered_stable(double alpha, double c, double theta, double sigma = 0.0,
                                   double gamma = 0.0);
  static ModelSpec compound_poisson_exp(double rate, double mean, double sigma, double gamma);

  double sigma() const noexcept { return sigma_; }
  double gamma() const noexcept { return gamma_; }
  const JumpFamily& jumps() const noexcept { return jumps_; }

  /// psi on [0, inf).
  double psi(double lambda) const;
  /// Analytic continuation of psi to Re(lambda) > 0 (principal branches).
  std::complex<double> psi(std::complex<double> lambda) const;
  /// Right derivative of psi; lambda = 0 gives psi'(0+).
  double psi_prime(double lambda) const;
  /// Second derivative; may be +inf at 0 for stable jumps.
  double psi_second(double lambda) const;

  /// Jump-free pure Brownian motion with drift.
  bool is_brownian() const noexcept;
  /// sigma = gamma = 0 with stable jumps: psi(lambda) = c lambda^alpha.
  bool is_pure_stable() const noexcept;

  std::string describe() const;

 private:
  double sigma_;
  double gamma_;
  JumpFamily jumps_;
};

/// Outcome of checking the standing regularity assumption: either a Gaussian
/// component, or jumps of infinite variation.
struct ValidityReport {
  bool valid = false;
  bool gaussian_clause = false;
  bool infinite_variation_clause = false;
  std::string message;
};

double psi(const ModelSpec& model, double lambda);
double psi_prime(const ModelSpec& model, double lambda);
ValidityReport validate(const ModelSpec& model);

/// Reads `model.sigma`, `model.gamma`, `model.jumps` (none | stable |
/// tempered | cpp_exp) and the family keys `stable.alpha`, `stable.c`,
/// `tempered.alpha`, `tempered.c`, `tempered.theta`, `cpp_exp.rate`,
/// `cpp_exp.mean`.
ModelSpec model_from_config(const KeyValueConfig& cfg);

}  // namespace twopoint
