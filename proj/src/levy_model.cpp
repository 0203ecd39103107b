#include "twopoint/levy_model.hpp"

#include <cmath>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw DomainError("stable index alpha must lie in (1, 2), got " + std::to_string(alpha));
}

}  // namespace

ModelSpec::ModelSpec(double sigma, double gamma, JumpFamily jumps)
    : sigma_(sigma), gamma_(gamma), jumps_(std::move(jumps)) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be finite and >= 0");
  if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
  std::visit(overloaded{
                 [](const NoJumps&) {},
                 [](const StableJumps& j) {
                   check_alpha(j.alpha);
                   if (!(j.c > 0.0)) throw DomainError("stable scale c must be > 0");
                 },
                 [](const TemperedStableJumps& j) {
                   check_alpha(j.alpha);
                   if (!(j.c > 0.0)) throw DomainError("tempered scale c must be > 0");
                   if (!(j.theta >= 0.0)) throw DomainError("tempering theta must be >= 0");
                 },
                 [](const CompoundPoissonExpJumps& j) {
                   if (!(j.rate > 0.0)) throw DomainError("jump rate must be > 0");
                   if (!(j.mean > 0.0)) throw DomainError("mean jump size must be > 0");
                 },
             },
             jumps_);
}

ModelSpec ModelSpec::brownian(double sigma, double gamma) { return {sigma, gamma, NoJumps{}}; }

ModelSpec ModelSpec::stable(double alpha, double c) { return {0.0, 0.0, StableJumps{alpha, c}}; }

ModelSpec ModelSpec::tempered_stable(double alpha, double c, double theta, double sigma,
                                     double gamma) {
  return {sigma, gamma, TemperedStableJumps{alpha, c, theta}};
}

ModelSpec ModelSpec::compound_poisson_exp(double rate, double mean, double sigma, double gamma) {
  return {sigma, gamma, CompoundPoissonExpJumps{rate, mean}};
}

double ModelSpec::psi(double lambda) const {
  if (!(lambda >= 0.0)) throw DomainError("psi: lambda must be >= 0");
  double base = 0.5 * sigma_ * sigma_ * lambda * lambda + gamma_ * lambda;
  return base + std::visit(overloaded{
                               [](const NoJumps&) { return 0.0; },
                               [&](const StableJumps& j) { return j.c * std::pow(lambda, j.alpha); },
                               [&](const TemperedStableJumps& j) {
                                 if (j.theta == 0.0) return j.c * std::pow(lambda, j.alpha);
                                 double t = j.theta;
                                 return j.c * (std::pow(lambda + t, j.alpha) - std::pow(t, j.alpha) -
                                               j.alpha * std::pow(t, j.alpha - 1.0) * lambda);
                               },
                               [&](const CompoundPoissonExpJumps& j) {
                                 return -j.rate * j.mean * lambda / (1.0 + j.mean * lambda);
                               },
                           },
                           jumps_);
}

std::complex<double> ModelSpec::psi(std::complex<double> lambda) const {
  using C = std::complex<double>;
  C base = 0.5 * sigma_ * sigma_ * lambda * lambda + gamma_ * lambda;
  return base + std::visit(overloaded{
                               [](const NoJumps&) { return C(0.0); },
                               [&](const StableJumps& j) { return j.c * std::pow(lambda, j.alpha); },
                               [&](const TemperedStableJumps& j) {
                                 double t = j.theta;
                                 return j.c * (std::pow(lambda + t, j.alpha) - std::pow(t, j.alpha) -
                                               j.alpha * std::pow(t, j.alpha - 1.0) * lambda);
                               },
                               [&](const CompoundPoissonExpJumps& j) {
                                 return -j.rate * j.mean * lambda / (1.0 + j.mean * lambda);
                               },
                           },
                           jumps_);
}

double ModelSpec::psi_prime(double lambda) const {
  if (!(lambda >= 0.0)) throw DomainError("psi_prime: lambda must be >= 0");
  double base = sigma_ * sigma_ * lambda + gamma_;
  return base + std::visit(overloaded{
                               [](const NoJumps&) { return 0.0; },
                               [&](const StableJumps& j) {
                                 return j.c * j.alpha * std::pow(lambda, j.alpha - 1.0);
                               },
                               [&](const TemperedStableJumps& j) {
                                 return j.c * j.alpha *
                                        (std::pow(lambda + j.theta, j.alpha - 1.0) -
                                         std::pow(j.theta, j.alpha - 1.0));
                               },
                               [&](const CompoundPoissonExpJumps& j) {
                                 double d = 1.0 + j.mean * lambda;
                                 return -j.rate * j.mean / (d * d);
                               },
                           },
                           jumps_);
}

double ModelSpec::psi_second(double lambda) const {
  if (!(lambda >= 0.0)) throw DomainError("psi_second: lambda must be >= 0");
  double base = sigma_ * sigma_;
  return base + std::visit(overloaded{
                               [](const NoJumps&) { return 0.0; },
                               [&](const StableJumps& j) {
                                 return j.c * j.alpha * (j.alpha - 1.0) *
                                        std::pow(lambda, j.alpha - 2.0);
                               },
                               [&](const TemperedStableJumps& j) {
                                 return j.c * j.alpha * (j.alpha - 1.0) *
                                        std::pow(lambda + j.theta, j.alpha - 2.0);
                               },
                               [&](const CompoundPoissonExpJumps& j) {
                                 double d = 1.0 + j.mean * lambda;
                                 return 2.0 * j.rate * j.mean * j.mean / (d * d * d);
                               },
                           },
                           jumps_);
}

bool ModelSpec::is_brownian() const noexcept { return std::holds_alternative<NoJumps>(jumps_); }

bool ModelSpec::is_pure_stable() const noexcept {
  return sigma_ == 0.0 && gamma_ == 0.0 && std::holds_alternative<StableJumps>(jumps_);
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "sigma=" << sigma_ << " gamma=" << gamma_ << " jumps=";
  std::visit(overloaded{
                 [&](const NoJumps&) { os << "none"; },
                 [&](const StableJumps& j) { os << "stable(alpha=" << j.alpha << ",c=" << j.c << ")"; },
                 [&](const TemperedStableJumps& j) {
                   os << "tempered(alpha=" << j.alpha << ",c=" << j.c << ",theta=" << j.theta << ")";
                 },
                 [&](const CompoundPoissonExpJumps& j) {
                   os << "cpp_exp(rate=" << j.rate << ",mean=" << j.mean << ")";
                 },
             },
             jumps_);
  return os.str();
}

double psi(const ModelSpec& model, double lambda) { return model.psi(lambda); }

double psi_prime(const ModelSpec& model, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("psi_prime: lambda must be > 0");
  return model.psi_prime(lambda);
}

ValidityReport validate(const ModelSpec& model) {
  ValidityReport r;
  r.gaussian_clause = model.sigma() > 0.0;
  r.infinite_variation_clause = std::holds_alternative<StableJumps>(model.jumps()) ||
                                std::holds_alternative<TemperedStableJumps>(model.jumps());
  r.valid = r.gaussian_clause || r.infinite_variation_clause;
  if (r.gaussian_clause && r.infinite_variation_clause)
    r.message = "valid: Gaussian component and infinite-variation jumps";
  else if (r.gaussian_clause)
    r.message = "valid: Gaussian component (sigma > 0)";
  else if (r.infinite_variation_clause)
    r.message = "valid: jumps of infinite variation";
  else
    r.message = "invalid: sigma = 0 and the jump part has bounded variation, so points are not regular";
  return r;
}

ModelSpec model_from_config(const KeyValueConfig& cfg) {
  double sigma = cfg.get_double("model.sigma", 0.0);
  double gamma = cfg.get_double("model.gamma", 0.0);
  std::string family = cfg.get_string("model.jumps", "none");
  if (family == "none") return {sigma, gamma, NoJumps{}};
  if (family == "stable")
    return {sigma, gamma, StableJumps{cfg.require_double("stable.alpha"), cfg.get_double("stable.c", 1.0)}};
  if (family == "tempered")
    return {sigma, gamma,
            TemperedStableJumps{cfg.require_double("tempered.alpha"), cfg.get_double("tempered.c", 1.0),
                                cfg.get_double("tempered.theta", 0.0)}};
  if (family == "cpp_exp")
    return {sigma, gamma,
            CompoundPoissonExpJumps{cfg.require_double("cpp_exp.rate"), cfg.require_double("cpp_exp.mean")}};
  throw DomainError("model.jumps must be one of none, stable, tempered, cpp_exp; got '" + family + "'");
}

}  // namespace twopoint
