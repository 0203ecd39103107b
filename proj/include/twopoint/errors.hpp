#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace twopoint {

/// An argument lies outside the domain of the requested quantity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not certify its result (inversion error
/// estimate above tolerance, a denominator that should be positive is not,
/// a root finder that did not converge).
class NumericalFault : public std::runtime_error {
 public:
  explicit NumericalFault(const std::string& what,
                          double estimate = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// The requested quantity has no tractable closed form for this model.
class UnsupportedCase : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace twopoint
