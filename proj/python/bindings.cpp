#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twopoint/conditioned_process.hpp"
#include "twopoint/config.hpp"
#include "twopoint/entrance_laws.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/identities.hpp"
#include "twopoint/killed_resolvent.hpp"
#include "twopoint/last_visit.hpp"
#include "twopoint/mc_oracle.hpp"

namespace py = pybind11;
using namespace twopoint;

namespace {

Endpoint endpoint(const std::string& side) {
  if (side == "plus") return Endpoint::plus;
  if (side == "minus") return Endpoint::minus;
  throw DomainError("side must be 'plus' or 'minus'");
}

BoundaryApproach approach(const std::string& side) {
  if (side == "up_to_minus_a") return BoundaryApproach::up_to_minus_a;
  if (side == "down_to_minus_a") return BoundaryApproach::down_to_minus_a;
  if (side == "up_to_a") return BoundaryApproach::up_to_a;
  if (side == "down_to_a") return BoundaryApproach::down_to_a;
  throw DomainError("unknown approach: " + side);
}

ExcursionPart part(const std::string& name) {
  if (name == "total") return ExcursionPart::total;
  if (name == "down") return ExcursionPart::down_start;
  if (name == "up") return ExcursionPart::up_start;
  throw DomainError("part must be 'total', 'down' or 'up'");
}

McConfig mc_config(std::uint64_t paths, double dt, double horizon, std::uint64_t seed, unsigned workers,
                   double small_jump_eps, bool adaptive_steps) {
  McConfig mc;
  mc.paths = paths;
  mc.dt = dt;
  mc.horizon = horizon;
  mc.seed = seed;
  mc.workers = workers;
  mc.small_jump_eps = small_jump_eps;
  mc.adaptive_steps = adaptive_steps;
  return mc;
}

py::dict as_dict(const McEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["paths_used"] = e.paths_used;
  d["truncation_bias"] = e.truncation_bias;
  d["discretization_allowance"] = e.discretization_allowance;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalFault>(m, "NumericalFault", PyExc_ArithmeticError);
  py::register_exception<UnsupportedCase>(m, "UnsupportedCase", PyExc_NotImplementedError);

  py::class_<ModelSpec>(m, "Model")
      .def_static("brownian", &ModelSpec::brownian, py::arg("sigma"), py::arg("gamma") = 0.0)
      .def_static("stable", &ModelSpec::stable, py::arg("alpha"), py::arg("c") = 1.0)
      .def_static("tempered_stable", &ModelSpec::tempered_stable, py::arg("alpha"), py::arg("c"),
                  py::arg("theta"), py::arg("sigma") = 0.0, py::arg("gamma") = 0.0)
      .def_static("compound_poisson_exp", &ModelSpec::compound_poisson_exp, py::arg("rate"), py::arg("mean"),
                  py::arg("sigma"), py::arg("gamma"))
      .def_static(
          "from_file", [](const std::string& path) { return model_from_config(KeyValueConfig::load(path)); },
          py::arg("path"))
      .def_property_readonly("sigma", &ModelSpec::sigma)
      .def_property_readonly("gamma", &ModelSpec::gamma)
      .def("psi", py::overload_cast<double>(&ModelSpec::psi, py::const_), py::arg("lam"))
      .def("psi_prime", &ModelSpec::psi_prime, py::arg("lam"))
      .def("__repr__", &ModelSpec::describe);

  py::class_<ScaleEngine>(m, "ScaleEngine")
      .def(py::init([](const ModelSpec& model, double tol, int max_terms) {
             InversionParams p;
             p.tol = tol;
             p.max_terms = max_terms;
             return std::make_unique<ScaleEngine>(model, p);
           }),
           py::arg("model"), py::arg("tol") = 1e-10, py::arg("max_terms") = 400)
      .def_property_readonly("model", &ScaleEngine::model)
      .def_property_readonly("uses_closed_form", &ScaleEngine::uses_closed_form)
      .def("phi", &ScaleEngine::phi_nonneg, py::arg("q"))
      .def("phi_prime", &ScaleEngine::phi_prime, py::arg("q"))
      .def("w", &ScaleEngine::w, py::arg("q"), py::arg("x"))
      .def("w_prime", &ScaleEngine::w_prime, py::arg("q"), py::arg("x"))
      .def("u_density", &ScaleEngine::u_density, py::arg("q"), py::arg("y"));

  m.def(
      "killed_resolvent_density",
      [](const ScaleEngine& e, double a, double q, double x, double y) {
        return killed_resolvent_density(e, TwoPointConfig(a), q, x, y);
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("x"), py::arg("y"));
  m.def(
      "avoidance_probability",
      [](const ScaleEngine& e, double a, double q, double x) {
        return avoidance_probability(e, TwoPointConfig(a), q, x);
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("x"));
  m.def(
      "local_time_weight",
      [](const ScaleEngine& e, double a, double q, const std::string& side) {
        return local_time_weight(e, TwoPointConfig(a), q, endpoint(side));
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("side"));
  m.def(
      "boundary_limit_density",
      [](const ScaleEngine& e, double a, double q, double beta, double y, const std::string& side) {
        return boundary_limit_density(e, TwoPointConfig(a), q, beta, y, approach(side));
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("beta"), py::arg("y"), py::arg("side"));
  m.def(
      "boundary_denominator",
      [](const ScaleEngine& e, double a, double q, const std::string& side) {
        return boundary_denominator(e, TwoPointConfig(a), q, approach(side));
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("side"));
  m.def(
      "conditioned_resolvent_hat",
      [](const ScaleEngine& e, double a, double q, double beta, double x, double center, double half_width) {
        return conditioned_resolvent(e, TwoPointConfig(a), q, beta, x, GridFunction::hat(center, half_width));
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("beta"), py::arg("x"), py::arg("center"),
      py::arg("half_width"));
  m.def(
      "entrance_density",
      [](const ScaleEngine& e, double a, double beta, double y, const std::string& side, const std::string& p) {
        return entrance_density(e, TwoPointConfig(a), beta, y, endpoint(side), part(p));
      },
      py::arg("engine"), py::arg("a"), py::arg("beta"), py::arg("y"), py::arg("side"), py::arg("part") = "total");
  m.def(
      "excursion_laplace",
      [](const ScaleEngine& e, double a, double q, const std::string& side) {
        return excursion_laplace(e, TwoPointConfig(a), q, endpoint(side));
      },
      py::arg("engine"), py::arg("a"), py::arg("q"), py::arg("side"));
  m.def("last_visit_laplace", &last_visit_laplace, py::arg("engine"), py::arg("lam"), py::arg("z"), py::arg("x"),
        py::arg("y"));

  m.def(
      "check_identities",
      [](const ModelSpec& model, double a) {
        std::vector<CheckResult> checks;
        {
          py::gil_scoped_release release;
          checks = check_identities(model, TwoPointConfig(a));
        }
        std::vector<py::dict> out;
        for (const auto& c : checks) {
          py::dict d;
          d["name"] = c.name;
          d["error"] = c.error;
          d["tolerance"] = c.tolerance;
          d["passed"] = c.passed;
          out.push_back(d);
        }
        return out;
      },
      py::arg("model"), py::arg("a") = 0.5);

  m.def(
      "mc_h",
      [](const ModelSpec& model, double a, double q, double x, std::uint64_t paths, double dt, double horizon,
         std::uint64_t seed, unsigned workers, double small_jump_eps, bool adaptive_steps) {
        McEstimate est;
        {
          py::gil_scoped_release release;
          est = estimate_h(model, TwoPointConfig(a), q, x,
                           mc_config(paths, dt, horizon, seed, workers, small_jump_eps, adaptive_steps));
        }
        return as_dict(est);
      },
      py::arg("model"), py::arg("a"), py::arg("q"), py::arg("x"), py::arg("paths") = 100000, py::arg("dt") = 1e-4,
      py::arg("horizon") = 50.0, py::arg("seed") = 1, py::arg("workers") = 1, py::arg("small_jump_eps") = 1e-3,
      py::arg("adaptive_steps") = true);
  m.def(
      "mc_last_visit",
      [](const ModelSpec& model, double lam, double z, double x, double y, std::uint64_t paths, double dt,
         double horizon, std::uint64_t seed, unsigned workers, double small_jump_eps, bool adaptive_steps) {
        McEstimate est;
        {
          py::gil_scoped_release release;
          est = estimate_last_visit(model, lam, z, x, y,
                                    mc_config(paths, dt, horizon, seed, workers, small_jump_eps, adaptive_steps));
        }
        return as_dict(est);
      },
      py::arg("model"), py::arg("lam"), py::arg("z"), py::arg("x"), py::arg("y"), py::arg("paths") = 100000,
      py::arg("dt") = 1e-4, py::arg("horizon") = 50.0, py::arg("seed") = 1, py::arg("workers") = 1,
      py::arg("small_jump_eps") = 1e-3, py::arg("adaptive_steps") = true);
}
