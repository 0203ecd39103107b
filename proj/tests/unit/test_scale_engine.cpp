#include <doctest.h>

#include <cmath>
#include <thread>

#include "closed_forms.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/quadrature.hpp"
#include "twopoint/scale_engine.hpp"

using namespace twopoint;

TEST_CASE("Phi and its derivative") {
  ScaleEngine bm(ModelSpec::brownian(1.0));
  ScaleEngine st(ModelSpec::stable(1.5));
  ScaleEngine drift(ModelSpec::brownian(1.0, -1.0));
  CHECK(bm.phi_zero() == 0.0);
  CHECK(st.phi_zero() == 0.0);
  CHECK(drift.phi_zero() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(bm.phi(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(st.phi(8.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(bm.phi_prime(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(st.phi_prime(1.0) == doctest::Approx(1.0 / 1.5).epsilon(1e-14));
  CHECK(drift.phi_nonneg(0.0) == drift.phi_zero());
  CHECK(bm.inv_phi_prime(0.0) == 0.0);
  CHECK(drift.inv_phi_prime(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(bm.phi(0.0), DomainError);
  CHECK_THROWS_AS(bm.phi(-1.0), DomainError);

  ScaleEngine ts(ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8));
  CHECK(ts.phi(1.0) == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(ts.phi(2.0) == doctest::Approx(1.7897532395825638965).epsilon(1e-13));
  for (const ScaleEngine* e : {&bm, &st, &drift, &ts})
    for (double q : {0.01, 0.5, 1.0, 2.0, 50.0}) {
      double p = e->phi(q);
      CHECK(std::abs(e->model().psi(p) - q) <= 1e-12 * std::max(1.0, q));
      double h = 1e-5 * q;
      CHECK(e->phi_prime(q) == doctest::Approx((e->phi(q + h) - e->phi(q - h)) / (2.0 * h)).epsilon(1e-6));
    }
}

TEST_CASE("W for Brownian motion") {
  ScaleEngine bm(ModelSpec::brownian(1.0));
  CHECK(bm.w(1.0, -1.0) == 0.0);
  CHECK(bm.w(1.0, 0.0) == 0.0);
  CHECK(bm.w(1.0, 1.0) == doctest::Approx(std::sqrt(2.0) * std::sinh(std::sqrt(2.0))).epsilon(1e-14));
  CHECK(bm.w_prime(1.0, 1.0) == doctest::Approx(2.0 * std::cosh(std::sqrt(2.0))).epsilon(1e-14));
  CHECK(bm.w(0.0, 0.7) == doctest::Approx(1.4).epsilon(1e-14));
  for (double q : {0.0, 0.5, 3.0})
    for (double x : {0.01, 0.5, 4.0}) {
      CHECK(bm.w(q, x) == doctest::Approx(oracle::bm_w(q, x)).epsilon(1e-13));
      CHECK(bm.w_prime(q, x) == doctest::Approx(oracle::bm_w_prime(q, x)).epsilon(1e-13));
    }

  // Drift -1: roots 1 +- sqrt(1 + 2q) of psi = q.
  ScaleEngine drift(ModelSpec::brownian(1.0, -1.0));
  for (double q : {0.0, 1.0})
    for (double x : {0.3, 2.0}) {
      double r = std::sqrt(1.0 + 2.0 * q);
      CHECK(drift.w(q, x) == doctest::Approx((std::exp((1 + r) * x) - std::exp((1 - r) * x)) / r).epsilon(1e-12));
    }
}

TEST_CASE("W for the 1.5-stable process") {
  ScaleEngine st(ModelSpec::stable(1.5));
  CHECK(st.w(0.0, 4.0) == doctest::Approx(2.0 / std::tgamma(1.5)).epsilon(1e-14));
  CHECK(st.w_prime(0.0, 1.0) == doctest::Approx(0.5 / std::tgamma(1.5)).epsilon(1e-14));
  CHECK(st.w(1.0, -1.0) == 0.0);
  // x^{1/2} E_{3/2,3/2}(q x^{3/2}) and its derivative, 40-digit references.
  CHECK(st.w(1.0, 0.5) == doctest::Approx(0.930749880512444155).epsilon(1e-13));
  CHECK(st.w(1.0, 2.0) == doctest::Approx(4.8905065306331472821).epsilon(1e-13));
  CHECK(st.w(0.5, 3.0) == doctest::Approx(5.5104253251104362221).epsilon(1e-13));
  CHECK(st.w_prime(1.0, 0.5) == doctest::Approx(1.353759361619746009).epsilon(1e-13));
  CHECK(st.w_prime(1.0, 2.0) == doctest::Approx(4.9536965837884518764).epsilon(1e-13));
  CHECK(st.w_prime(0.5, 3.0) == doctest::Approx(3.5268161926578865313).epsilon(1e-13));
}

TEST_CASE("numerical inversion matches closed forms") {
  for (const auto& model : {ModelSpec::brownian(1.0), ModelSpec::stable(1.5), ModelSpec::brownian(1.0, 0.4)}) {
    CAPTURE(model.describe());
    ScaleEngine closed(model, {}, ScaleMethod::closed_form);
    ScaleEngine generic(model, {}, ScaleMethod::inversion);
    CHECK(closed.uses_closed_form());
    CHECK_FALSE(generic.uses_closed_form());
    for (double q : {0.5, 1.0, 2.0})
      for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        CHECK(generic.w(q, x) == doctest::Approx(closed.w(q, x)).epsilon(1e-8));
        CHECK(generic.w_prime(q, x) == doctest::Approx(closed.w_prime(q, x)).epsilon(1e-8));
        CHECK(generic.remainder(q, x) == doctest::Approx(closed.remainder(q, x)).epsilon(1e-8));
      }
  }
}

TEST_CASE("tempered stable W against an independent inversion") {
  ScaleEngine ts(ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8));
  CHECK(ts.w(1.0, 0.5) == doctest::Approx(0.897240337016732763).epsilon(1e-9));
  CHECK(ts.w(1.0, 2.0) == doctest::Approx(7.80592540149273708).epsilon(1e-9));
  CHECK(ts.w(2.0, 0.5) == doctest::Approx(0.971742084114774376).epsilon(1e-9));
  CHECK(ts.w(2.0, 2.0) == doctest::Approx(16.6557466280341322).epsilon(1e-9));
  CHECK_THROWS_AS(ScaleEngine(ModelSpec::tempered_stable(1.5, 1.0, 1.0), {}, ScaleMethod::closed_form),
                  UnsupportedCase);
}

TEST_CASE("W is the inverse transform of 1 / (psi - q)") {
  for (const auto& model : {ModelSpec::brownian(1.0), ModelSpec::stable(1.5),
                            ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8)}) {
    ScaleEngine e(model);
    for (double q : {0.5, 2.0}) {
      double theta = e.phi(q) + 1.0;
      double slope = e.phi_prime(q);
      auto f = [&](double x) { return std::exp(-x) * slope - std::exp(-theta * x) * e.remainder(q, x); };
      double got = integrate(f, 0.0, INFINITY).value;
      CHECK(got == doctest::Approx(1.0 / (model.psi(theta) - q)).epsilon(1e-8));
    }
  }
}

TEST_CASE("W' against central differences, W nondecreasing") {
  for (const auto& model : {ModelSpec::stable(1.5), ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8),
                            ModelSpec::compound_poisson_exp(2.0, 0.5, 0.6, 0.5)}) {
    CAPTURE(model.describe());
    ScaleEngine e(model);
    double prev = 0.0;
    for (double x = 0.05; x < 3.0; x += 0.15) {
      double h = 1e-5;
      double fd = (e.w(1.0, x + h) - e.w(1.0, x - h)) / (2.0 * h);
      CHECK(e.w_prime(1.0, x) == doctest::Approx(fd).epsilon(1e-6));
      double w = e.w(1.0, x);
      CHECK(w >= prev);
      prev = w;
    }
  }
}

TEST_CASE("free resolvent density") {
  ScaleEngine bm(ModelSpec::brownian(1.0));
  CHECK(bm.u_density(1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(bm.u_density(1.0, 2.0) == doctest::Approx(std::exp(-2.0 * std::sqrt(2.0)) / std::sqrt(2.0)).epsilon(1e-14));
  // Symmetric process: u(y) = u(-y).
  CHECK(bm.u_density(1.0, -2.0) == doctest::Approx(bm.u_density(1.0, 2.0)).epsilon(1e-12));
  for (const auto& model : {ModelSpec::stable(1.5), ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8)}) {
    ScaleEngine e(model);
    CHECK(e.u_density(1.0, 0.0) == doctest::Approx(e.phi_prime(1.0)).epsilon(1e-12));
    CHECK(e.u_density(2.0, -1.5) == doctest::Approx(e.remainder(2.0, 1.5)).epsilon(1e-14));
    // Total mass of the q-resolvent is 1/q.
    auto f = [&](double y) { return e.u_density(1.0, y); };
    CHECK(integrate(f, -INFINITY, INFINITY, {0.0}).value == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("the Phi memo is transparent and safe to share") {
  ScaleEngine cold(ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8));
  ScaleEngine warm(ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8));
  for (int i = 0; i < 3; ++i) warm.phi(0.7);
  CHECK(cold.phi(0.7) == warm.phi(0.7));

  ScaleEngine shared(ModelSpec::stable(1.5), {}, ScaleMethod::inversion);
  std::vector<double> expected;
  for (int k = 0; k < 8; ++k) expected.push_back(ScaleEngine(ModelSpec::stable(1.5), {}, ScaleMethod::inversion).w(0.5 + k, 1.0));
  std::vector<double> got(8);
  std::vector<std::thread> pool;
  for (int k = 0; k < 8; ++k) pool.emplace_back([&, k] { got[k] = shared.w(0.5 + k, 1.0); });
  for (auto& t : pool) t.join();
  CHECK(got == expected);
}

TEST_CASE("inversion reports failure instead of returning noise") {
  InversionParams strict;
  strict.tol = 1e-16;
  strict.max_terms = 32;
  ScaleEngine e(ModelSpec::stable(1.5), strict, ScaleMethod::inversion);
  CHECK_THROWS_AS(e.w(1.0, 1.0), NumericalFault);
  InversionParams bad;
  bad.max_terms = 10;
  CHECK_THROWS_AS(ScaleEngine(ModelSpec::stable(1.5), bad), DomainError);
}
