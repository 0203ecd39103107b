#include <doctest.h>

#include "twopoint/config.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/levy_model.hpp"
#include "twopoint/scale_engine.hpp"

using namespace twopoint;

TEST_CASE("key = value parsing with comments and sections") {
  auto cfg = KeyValueConfig::parse_string(
      "# comment\n"
      "model.sigma = 0.5\n"
      "; also a comment\n"
      "\n"
      "[inversion]\n"
      "tol = 1e-9\n"
      "max_terms=200\n");
  CHECK(cfg.get_double("model.sigma", 0.0) == 0.5);
  CHECK(cfg.get_double("inversion.tol", 0.0) == 1e-9);
  CHECK(cfg.get_int("inversion.max_terms", 0) == 200);
  CHECK(cfg.get_string("model.jumps", "none") == "none");
  CHECK_FALSE(cfg.contains("tol"));
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(KeyValueConfig::parse_string("no equals sign\n"), DomainError);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("[open\n"), DomainError);
  auto cfg = KeyValueConfig::parse_string("x = abc\ny = 1.5\n");
  CHECK_THROWS_AS(cfg.get_double("x", 0.0), DomainError);
  CHECK_THROWS_AS(cfg.get_int("y", 0), DomainError);
  CHECK_THROWS_AS(cfg.require_double("missing"), DomainError);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/model.cfg"), DomainError);
}

TEST_CASE("model keys") {
  auto bm = model_from_config(KeyValueConfig::parse_string("model.sigma = 1\nmodel.gamma = -1\n"));
  CHECK(bm.is_brownian());
  CHECK(bm.gamma() == -1.0);

  auto st = model_from_config(
      KeyValueConfig::parse_string("model.jumps = stable\nstable.alpha = 1.5\nstable.c = 2\n"));
  CHECK(st.is_pure_stable());
  CHECK(st.psi(4.0) == doctest::Approx(16.0).epsilon(1e-14));

  auto ts = model_from_config(KeyValueConfig::parse_string(
      "model.sigma = 0.8\nmodel.jumps = tempered\ntempered.alpha = 1.5\ntempered.c = 1\ntempered.theta = 1\n"));
  CHECK(ts.psi(1.25) == doctest::Approx(1.0).epsilon(1e-14));

  auto cp = model_from_config(KeyValueConfig::parse_string(
      "model.sigma = 1\nmodel.gamma = 2\nmodel.jumps = cpp_exp\ncpp_exp.rate = 1\ncpp_exp.mean = 0.5\n"));
  CHECK(cp.psi(2.0) == doctest::Approx(2.0 + 4.0 + (1.0 / 2.0 - 1.0)).epsilon(1e-14));

  CHECK_THROWS_AS(model_from_config(KeyValueConfig::parse_string("model.jumps = gamma\n")), DomainError);
  CHECK_THROWS_AS(model_from_config(KeyValueConfig::parse_string("model.jumps = stable\n")), DomainError);
}

TEST_CASE("inversion keys") {
  auto p = inversion_params_from_config(
      KeyValueConfig::parse_string("[inversion]\ntol = 1e-8\nmax_terms = 100\ncontour_eps = 1e-10\n"));
  CHECK(p.tol == 1e-8);
  CHECK(p.max_terms == 100);
  CHECK(p.contour_eps == 1e-10);
  auto d = inversion_params_from_config(KeyValueConfig{});
  CHECK(d.tol == 1e-10);
}
