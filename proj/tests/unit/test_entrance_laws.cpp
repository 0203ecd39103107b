#include <doctest.h>

#include <cmath>

#include "closed_forms.hpp"
#include "twopoint/entrance_laws.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/quadrature.hpp"

using namespace twopoint;

namespace {

const ScaleEngine& bm() {
  static const ScaleEngine e(ModelSpec::brownian(1.0));
  return e;
}
const ScaleEngine& stable() {
  static const ScaleEngine e(ModelSpec::stable(1.5));
  return e;
}

// W^(1)(2a) / (e^{2a Phi(1)} - 1) for Brownian motion.
double bm_normalizer(double a) { return oracle::bm_w(1, 2 * a) / std::expm1(2 * a * oracle::bm_phi(1)); }

}  // namespace

TEST_CASE("excursions from -a, Brownian motion") {
  const double a = 0.5;
  TwoPointConfig cfg(a);
  for (double beta : {0.5, 2.0}) {
    for (double y : {0.5, 0.9, 3.0})
      CHECK(entrance_density(bm(), cfg, beta, y, Endpoint::minus) == 0.0);
    for (double y : {-0.4, 0.0, 0.3})
      CHECK(entrance_density(bm(), cfg, beta, y, Endpoint::minus) ==
            doctest::Approx(bm_normalizer(a) * oracle::bm_w(beta, a - y) / oracle::bm_w(beta, 2 * a)).epsilon(1e-13));
  }
  double q = 2.0;
  double expected = std::expm1(2 * a * oracle::bm_phi(q)) / std::expm1(2 * a * oracle::bm_phi(1)) *
                    oracle::bm_w(1, 2 * a) / oracle::bm_w(q, 2 * a);
  CHECK(excursion_laplace(bm(), cfg, q, Endpoint::minus) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(excursion_laplace_split(bm(), cfg, 1.0, ExcursionPart::down_start) ==
        doctest::Approx(bm_normalizer(a) * 0.5 * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("normalization and monotonicity of the excursion functionals") {
  TwoPointConfig cfg(0.5);
  CHECK(excursion_laplace(bm(), cfg, 1.0, Endpoint::minus) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(excursion_laplace(stable(), cfg, 1.0, Endpoint::minus) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(excursion_laplace(stable(), cfg, 1.0, Endpoint::plus) == doctest::Approx(1.0).epsilon(1e-12));
  for (const ScaleEngine* e : {&bm(), &stable()})
    for (auto side : {Endpoint::minus, Endpoint::plus}) {
      if (e == &bm() && side == Endpoint::plus) continue;
      double prev = 0.0;
      for (double q : {0.5, 1.0, 2.0, 4.0}) {
        double v = excursion_laplace(*e, cfg, q, side);
        CHECK(v > prev);
        prev = v;
      }
    }
}

TEST_CASE("creeping split") {
  TwoPointConfig cfg(0.5);
  for (double q : {0.5, 1.0, 3.0}) {
    CHECK(excursion_laplace_split(stable(), cfg, q, ExcursionPart::down_start) == 0.0);
    for (const ScaleEngine* e : {&bm(), &stable()}) {
      double down = excursion_laplace_split(*e, cfg, q, ExcursionPart::down_start);
      double up = excursion_laplace_split(*e, cfg, q, ExcursionPart::up_start);
      CHECK(std::abs(down + up - excursion_laplace(*e, cfg, q, Endpoint::minus)) <= 1e-12);
    }
  }
  for (double y : {-2.0, -0.7, -0.1, 0.3}) {
    CHECK(entrance_density(stable(), cfg, 1.0, y, Endpoint::minus, ExcursionPart::down_start) == 0.0);
    double total = entrance_density(bm(), cfg, 1.0, y, Endpoint::minus);
    double down = entrance_density(bm(), cfg, 1.0, y, Endpoint::minus, ExcursionPart::down_start);
    double up = entrance_density(bm(), cfg, 1.0, y, Endpoint::minus, ExcursionPart::up_start);
    CHECK(std::abs(total - down - up) <= 1e-12);
    CHECK(down >= -1e-12);
    CHECK(up >= -1e-12);
  }
}

TEST_CASE("mass identity beta int eta_beta = excursion functional") {
  TwoPointConfig cfg(0.5);
  struct Case {
    const ScaleEngine* e;
    Endpoint side;
  };
  for (auto [e, side] : {Case{&bm(), Endpoint::minus}, Case{&stable(), Endpoint::minus}, Case{&stable(), Endpoint::plus}})
    for (double beta : {0.5, 2.0}) {
      auto f = [&](double y) { return entrance_density(*e, cfg, beta, y, side); };
      double mass = beta * integrate(f, -INFINITY, INFINITY, {-0.5, 0.5}).value;
      CHECK(mass == doctest::Approx(excursion_laplace(*e, cfg, beta, side)).epsilon(1e-7));
    }
}

TEST_CASE("densities are nonnegative") {
  TwoPointConfig cfg(0.5);
  for (double y = -3.0; y <= 3.0; y += 0.0625) {
    if (std::abs(std::abs(y) - 0.5) < 1e-12) continue;
    CHECK(entrance_density(bm(), cfg, 1.5, y, Endpoint::minus) >= -1e-12);
    CHECK(entrance_density(stable(), cfg, 1.5, y, Endpoint::minus) >= -1e-12);
    CHECK(entrance_density(stable(), cfg, 1.5, y, Endpoint::plus) >= -1e-12);
  }
}

TEST_CASE("unsupported and invalid requests") {
  TwoPointConfig cfg(0.5);
  CHECK_THROWS_AS(entrance_density(bm(), cfg, 1.0, 0.0, Endpoint::plus), UnsupportedCase);
  CHECK_THROWS_AS(entrance_density(ScaleEngine(ModelSpec::tempered_stable(1.5, 1, 1, 0.3)), cfg, 1.0, 0.0, Endpoint::plus),
                  UnsupportedCase);
  CHECK_THROWS_AS(entrance_density(stable(), cfg, 1.0, 0.0, Endpoint::plus, ExcursionPart::down_start), DomainError);
  CHECK_THROWS_AS(entrance_density(stable(), cfg, 0.0, 0.0, Endpoint::minus), DomainError);
  CHECK_THROWS_AS(excursion_laplace(stable(), cfg, -1.0, Endpoint::minus), DomainError);
}
