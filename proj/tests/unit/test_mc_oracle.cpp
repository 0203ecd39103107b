#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "closed_forms.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/mc_oracle.hpp"
#include "twopoint/quadrature.hpp"

using namespace twopoint;

namespace {

bool within(const McEstimate& est, double truth, double k = 3.0) {
  return std::abs(est.value - truth) <= k * est.std_error + est.truncation_bias + est.discretization_allowance;
}

struct Moments {
  double mean, var;
};

Moments moments(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= xs.size();
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return {m, v / (xs.size() - 1)};
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::bijection(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::bijection(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::bijection(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox streams") {
  Philox4x32 g(0, 0);
  for (std::uint32_t w : {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}) CHECK(g() == w);
  auto second = Philox4x32::bijection({1, 0, 0, 0}, {0, 0});
  CHECK(g() == second[0]);

  std::uint64_t key = 0x123456789abcdefULL, stream = 0xfedcba9876543210ULL;
  Philox4x32 h(key, stream);
  auto first = Philox4x32::bijection({0, 0, 0x76543210, 0xfedcba98}, {0x89abcdef, 0x01234567});
  CHECK(h() == first[0]);
  CHECK(Philox4x32(1, 2)() != Philox4x32(1, 3)());
  CHECK(Philox4x32(1, 2)() != Philox4x32(2, 2)());
}

TEST_CASE("increment moments") {
  McConfig mc;
  SUBCASE("Brownian motion") {
    mc.dt = 1e-4;
    auto xs = simulate_increments(ModelSpec::brownian(1.0), mc, 0, 1000000);
    auto m = moments(xs);
    double n = xs.size();
    CHECK(std::abs(m.mean) <= 4.0 * std::sqrt(mc.dt / n));
    CHECK(std::abs(m.var - mc.dt) <= 4.0 * mc.dt * std::sqrt(2.0 / n));
  }
  SUBCASE("tempered stable with a Gaussian part") {
    mc.dt = 1e-2;
    mc.small_jump_eps = 1e-2;
    auto xs = simulate_increments(ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.8), mc, 5, 100000);
    auto m = moments(xs);
    double n = xs.size();
    double k2 = (0.64 + 1.5 * 0.5) * mc.dt;
    double k4 = 1.5 * 0.5 * 0.5 * 1.5 * mc.dt;
    CHECK(std::abs(m.mean) <= 4.0 * std::sqrt(k2 / n));
    CHECK(std::abs(m.var - k2) <= 4.0 * std::sqrt((k4 + 2 * k2 * k2) / n));
  }
  SUBCASE("compound Poisson with exponential jumps") {
    mc.dt = 1e-2;
    auto xs = simulate_increments(ModelSpec::compound_poisson_exp(1.0, 0.5, 1.0, 0.3), mc, 9, 100000);
    auto m = moments(xs);
    double n = xs.size();
    double k2 = 1.5 * mc.dt, k4 = 24 * 0.0625 * mc.dt;
    CHECK(std::abs(m.mean - (0.3 - 0.5) * mc.dt) <= 4.0 * std::sqrt(k2 / n));
    CHECK(std::abs(m.var - k2) <= 4.0 * std::sqrt((k4 + 2 * k2 * k2) / n));
  }
}

TEST_CASE("stable increments are self-similar") {
  McConfig mc;
  mc.dt = 1e-3;
  auto model = ModelSpec::stable(1.5);
  const std::size_t n = 100000;
  std::vector<double> single, scaled;
  const double factor = std::pow(4.0, -1.0 / 1.5);
  for (std::size_t i = 0; i < n; ++i) {
    single.push_back(simulate_increments(model, mc, i, 1)[0]);
    auto four = simulate_increments(model, mc, n + i, 4);
    scaled.push_back(factor * (four[0] + four[1] + four[2] + four[3]));
  }
  double critical = 1.628 * std::sqrt(2.0 / n);
  CHECK(ks_statistic(single, scaled) < critical);
}

TEST_CASE("increments depend only on seed and path") {
  McConfig mc;
  auto model = ModelSpec::tempered_stable(1.5, 1.0, 1.0, 0.3);
  CHECK(simulate_increments(model, mc, 17, 50) == simulate_increments(model, mc, 17, 50));
  CHECK(simulate_increments(model, mc, 17, 50) != simulate_increments(model, mc, 18, 50));
  auto other = mc;
  other.seed = 2;
  CHECK(simulate_increments(model, mc, 17, 50) != simulate_increments(model, other, 17, 50));
}

TEST_CASE("estimates are bitwise independent of the worker count") {
  McConfig mc;
  mc.paths = 5000;
  mc.seed = 42;
  TwoPointConfig cfg(0.5);
  auto model = ModelSpec::stable(1.5);
  auto one = estimate_h(model, cfg, 1.0, 0.2, mc);
  mc.workers = 4;
  auto four = estimate_h(model, cfg, 1.0, 0.2, mc);
  CHECK(one.value == four.value);
  CHECK(one.std_error == four.std_error);
  CHECK(one.paths_used == mc.paths);
  mc.seed = 43;
  CHECK(estimate_h(model, cfg, 1.0, 0.2, mc).value != one.value);
}

TEST_CASE("avoidance probability, Brownian motion") {
  McConfig mc;
  mc.paths = 20000;
  TwoPointConfig cfg(0.5);
  auto model = ModelSpec::brownian(1.0);
  for (double x : {-1.0, 0.0, 0.3, 1.5}) {
    auto est = estimate_h(model, cfg, 1.0, x, mc);
    CAPTURE(x);
    CHECK(within(est, oracle::bm_avoidance(1.0, 0.5, x)));
    CHECK(est.truncation_bias == doctest::Approx(std::exp(-mc.horizon)));
  }
  auto at_point = estimate_h(model, cfg, 1.0, -0.5, mc);
  CHECK(at_point.value == 0.0);
}

TEST_CASE("avoidance probability, stable") {
  McConfig mc;
  mc.paths = 4000;
  TwoPointConfig cfg(0.5);
  ScaleEngine e(ModelSpec::stable(1.5));
  for (double x : {-1.0, 0.0, 1.0}) {
    auto est = estimate_h(e.model(), cfg, 1.0, x, mc);
    CHECK(within(est, avoidance_probability(e, cfg, 1.0, x)));
  }
}

TEST_CASE("binned killed resolvent, Brownian motion") {
  McConfig mc;
  mc.paths = 4000;
  mc.dt = 1e-3;
  TwoPointConfig cfg(0.5);
  auto model = ModelSpec::brownian(1.0);
  std::vector<double> edges{-1.5, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0};
  auto bins = estimate_v_density(model, cfg, 1.0, 0.1, edges, mc);
  REQUIRE(bins.size() == edges.size() - 1);
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i], hi = edges[i + 1];
    auto f = [&](double y) { return oracle::bm_killed_density(1.0, 0.5, 0.1, y); };
    double ref = integrate(f, lo, hi, {0.1}).value / (hi - lo);
    CAPTURE(i);
    CHECK(within(bins[i], ref));
    mass += bins[i].value * (hi - lo);
  }
  CHECK(bins[0].value == 0.0);
  CHECK(bins[1].value == 0.0);
  CHECK(bins.back().value == 0.0);
  CHECK(mass == doctest::Approx(oracle::bm_avoidance(1.0, 0.5, 0.1)).epsilon(0.1));

  auto below = estimate_v_density(model, cfg, 1.0, -1.0, {0.6, 1.0, 2.0}, mc);
  for (const auto& b : below) CHECK(b.value == 0.0);
  CHECK_THROWS_AS(estimate_v_density(model, cfg, 1.0, 0.0, {0.0}, mc), DomainError);
}

TEST_CASE("last visit, Brownian motion") {
  McConfig mc;
  mc.paths = 20000;
  auto model = ModelSpec::brownian(1.0);
  auto est = estimate_last_visit(model, 1.0, 0.0, -0.5, 0.5, mc);
  CHECK(within(est, oracle::bm_last_visit(1.0, 0.0, -0.5, 0.5)));
  CHECK(est.truncation_bias > 0.0);
  auto at_target = estimate_last_visit(model, 1.0, 0.5, -0.5, 0.5, mc);
  CHECK(at_target.value == doctest::Approx(1.0));
  auto zero = estimate_last_visit(model, 0.0, 0.0, -0.5, 0.5, mc);
  CHECK(zero.value <= 1.0);
  CHECK(zero.value + zero.truncation_bias >= 1.0 - 1e-12);
  CHECK_THROWS_AS(estimate_last_visit(model, 1.0, 0.0, 0.5, 0.5, mc), DomainError);
}
