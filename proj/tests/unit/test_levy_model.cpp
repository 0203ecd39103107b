#include <doctest.h>

#include <cmath>
#include <random>

#include "twopoint/errors.hpp"
#include "twopoint/levy_model.hpp"
#include "twopoint/quadrature.hpp"

using namespace twopoint;

namespace {

std::vector<ModelSpec> zoo() {
  return {ModelSpec::brownian(1.0), ModelSpec::brownian(0.7, -1.0), ModelSpec::stable(1.5),
          ModelSpec::stable(1.2, 0.4), ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8),
          ModelSpec::tempered_stable(1.7, 2.0, 0.5), ModelSpec::compound_poisson_exp(1.0, 0.5, 1.0, 0.3)};
}

// The jump part of psi from its Levy measure c / Gamma(-alpha) e^{-theta u}
// u^{-1-alpha} du on the negative half-line, after u = s^2.
double jump_exponent_from_measure(double alpha, double c, double theta, double lambda) {
  auto g = [&](double s) {
    double u = s * s;
    if (s == 0.0 || !std::isfinite(u)) return 0.0;
    double x = lambda * u;
    // e^{-x} - 1 + x, by its series where the direct form cancels.
    double core = x < 1e-3 ? x * x * (0.5 - x / 6.0 + x * x / 24.0) : std::expm1(-x) + x;
    return 2.0 * s * core * std::exp(-theta * u) * std::pow(u, -1.0 - alpha);
  };
  return c / std::tgamma(-alpha) * integrate(g, 0.0, INFINITY, {}, {1e-14, 1e-12, 4000}).value;
}

}  // namespace

TEST_CASE("psi examples") {
  auto bm = ModelSpec::brownian(1.0);
  CHECK(bm.psi(0.0) == 0.0);
  CHECK(bm.psi(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(bm.psi_prime(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  auto st = ModelSpec::stable(1.5);
  CHECK(st.psi(4.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(st.psi_prime(1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(psi(st, 4.0) == st.psi(4.0));
  CHECK_THROWS_AS(bm.psi(-1.0), DomainError);
  CHECK_THROWS_AS(psi_prime(bm, 0.0), DomainError);
}

TEST_CASE("stable and tempered exponents match their Levy measures") {
  for (double lambda : {0.3, 1.0, 4.0}) {
    CAPTURE(lambda);
    CHECK(ModelSpec::stable(1.5).psi(lambda) ==
          doctest::Approx(jump_exponent_from_measure(1.5, 1.0, 0.0, lambda)).epsilon(1e-8));
    CHECK(ModelSpec::tempered_stable(1.5, 1.0, 1.0).psi(lambda) ==
          doctest::Approx(jump_exponent_from_measure(1.5, 1.0, 1.0, lambda)).epsilon(1e-8));
    CHECK(ModelSpec::tempered_stable(1.3, 2.0, 0.5).psi(lambda) ==
          doctest::Approx(jump_exponent_from_measure(1.3, 2.0, 0.5, lambda)).epsilon(1e-8));
  }
}

TEST_CASE("psi(0) = 0, psi' matches a central difference, psi is convex") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.05, 6.0);
  for (const auto& m : zoo()) {
    CAPTURE(m.describe());
    CHECK(m.psi(0.0) == 0.0);
    for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
      double h = 1e-5 * lambda;
      double fd = (m.psi(lambda + h) - m.psi(lambda - h)) / (2.0 * h);
      CHECK(m.psi_prime(lambda) == doctest::Approx(fd).epsilon(1e-6));
      double fd2 = (m.psi_prime(lambda + h) - m.psi_prime(lambda - h)) / (2.0 * h);
      CHECK(m.psi_second(lambda) == doctest::Approx(fd2).epsilon(1e-6));
    }
    for (int i = 0; i < 200; ++i) {
      double s = u(rng), t = u(rng);
      CHECK(m.psi(0.5 * (s + t)) <= 0.5 * (m.psi(s) + m.psi(t)) + 1e-12);
    }
  }
}

TEST_CASE("standing assumption") {
  auto bm = validate(ModelSpec::brownian(1.0));
  CHECK(bm.valid);
  CHECK(bm.gaussian_clause);
  auto st = validate(ModelSpec::stable(1.5));
  CHECK(st.valid);
  CHECK(st.infinite_variation_clause);
  CHECK_FALSE(st.gaussian_clause);
  auto cp = validate(ModelSpec::compound_poisson_exp(1.0, 0.5, 0.0, 1.0));
  CHECK_FALSE(cp.valid);
  CHECK_FALSE(cp.message.empty());
  CHECK(validate(ModelSpec::compound_poisson_exp(1.0, 0.5, 0.2, 1.0)).valid);
}

TEST_CASE("parameter ranges") {
  CHECK_THROWS_AS(ModelSpec::brownian(-1.0), DomainError);
  CHECK_THROWS_AS(ModelSpec::stable(2.0), DomainError);
  CHECK_THROWS_AS(ModelSpec::stable(1.0), DomainError);
  CHECK_THROWS_AS(ModelSpec::stable(1.5, 0.0), DomainError);
  CHECK_THROWS_AS(ModelSpec::tempered_stable(1.5, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(ModelSpec::compound_poisson_exp(0.0, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("model classification") {
  CHECK(ModelSpec::brownian(1.0, 0.3).is_brownian());
  CHECK_FALSE(ModelSpec::brownian(0.0, 0.3).is_pure_stable());
  CHECK(ModelSpec::stable(1.5).is_pure_stable());
  CHECK_FALSE(ModelSpec::tempered_stable(1.5, 1.0, 0.0, 0.1).is_pure_stable());
}
