#pragma once

#include <map>
#include <shared_mutex>

#include "twopoint/config.hpp"
#include "twopoint/laplace_inversion.hpp"
#include "twopoint/levy_model.hpp"

namespace twopoint {

enum class ScaleMethod {
  automatic,    ///< closed form when the model has one, inversion otherwise
  closed_form,  ///< require a closed form (Brownian motion, pure stable)
  inversion,    ///< always use numerical Laplace inversion
};

/// Evaluates Phi, Phi', the q-scale functions W^(q), their derivatives and
/// the free resolvent density of a valid model.
///
/// Besides W itself the engine exposes the remainder
///   R_q(s) = Phi'(q) e^{Phi(q) s} - W^(q)(s),
/// which equals the resolvent density u_q(-s). For large s the two terms on
/// the right cancel almost completely, so every formula downstream that
/// subtracts exponentially large scale-function values is written in terms
/// of R_q instead.
///
/// Thread-safe: the only mutable state is a memo of Phi values.
class ScaleEngine {
 public:
  explicit ScaleEngine(ModelSpec model, InversionParams params = {},
                       ScaleMethod method = ScaleMethod::automatic);

  const ModelSpec& model() const noexcept { return model_; }
  const InversionParams& inversion_params() const noexcept { return params_; }
  ScaleMethod method() const noexcept { return method_; }
  bool uses_closed_form() const noexcept { return closed_ != ClosedForm::none; }

  double phi_zero() const;
  /// Phi(q) for q > 0.
  double phi(double q) const;
  /// Phi(q) for q >= 0 (q = 0 gives phi_zero()).
  double phi_nonneg(double q) const;
  /// Phi'(q) = 1 / psi'(Phi(q)) for q > 0.
  double phi_prime(double q) const;
  /// psi'(Phi(q)) for q >= 0; at q = 0 with psi'(0+) = 0 this is the
  /// limiting value 0.
  double inv_phi_prime(double q) const;

  double w(double q, double x) const;
  /// Derivative of W^(q) at x > 0 (x >= 1e-6 on the inversion path).
  double w_prime(double q, double x) const;
  /// u_q(y) = Phi'(q) e^{-Phi(q) y} - W^(q)(-y), q > 0.
  double u_density(double q, double y) const;

  /// R_q(s) = Phi'(q) e^{Phi(q) s} - W^(q)(s); requires psi'(Phi(q)) > 0.
  double remainder(double q, double s) const;
  /// d/ds R_q(s) for s != 0.
  double remainder_prime(double q, double s) const;

 private:
  enum class ClosedForm { none, brownian, stable };

  double tilted_w(double q, double x) const;
  double tilted_w_prime(double q, double x) const;
  double remainder_by_inversion(double q, double s, bool derivative) const;
  double solve_phi(double q) const;

  ModelSpec model_;
  InversionParams params_;
  ScaleMethod method_;
  ClosedForm closed_ = ClosedForm::none;
  double phi_zero_ = 0.0;

  mutable std::shared_mutex cache_mutex_;
  mutable std::map<double, double> phi_cache_;
};

InversionParams inversion_params_from_config(const KeyValueConfig& cfg);

}  // namespace twopoint
