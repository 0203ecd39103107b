#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "twopoint/killed_resolvent.hpp"
#include "twopoint/levy_model.hpp"

namespace twopoint {

/// Philox4x32-10 counter-based generator. The 64-bit key is the run seed and
/// the upper half of the 128-bit counter is the path index, so every path
/// owns a non-overlapping stream of 2^66 words regardless of which worker
/// simulates it.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;

  Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return 0xffffffffu; }
  result_type operator()() noexcept;

  static Block bijection(Block counter, std::array<std::uint32_t, 2> key) noexcept;

 private:
  std::array<std::uint32_t, 2> key_;
  Block counter_;
  Block buffer_{};
  int used_ = 4;
};

struct McConfig {
  std::uint64_t paths = 100000;
  /// Time step of fixed-step runs, and the finest step of adaptive runs.
  double dt = 1e-4;
  double horizon = 50.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Jumps smaller than this are replaced by a Gaussian of equal variance
  /// (tempered stable jumps only).
  double small_jump_eps = 1e-3;
  /// Far from the watched levels, let the step grow with the distance.
  bool adaptive_steps = true;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t paths_used = 0;
  /// Bound on the bias from stopping paths at the horizon.
  double truncation_bias = 0.0;
  /// Allowance for the time-discretization bias.
  double discretization_allowance = 0.0;
};

/// `steps` successive increments over `mc.dt` of path number `path`.
std::vector<double> simulate_increments(const ModelSpec& model, const McConfig& mc, std::uint64_t path,
                                        std::size_t steps);

/// P^x(rho > e_q) = E^x[1 - e^{-q rho}], rho the hitting time of {-a, a}.
McEstimate estimate_h(const ModelSpec& model, const TwoPointConfig& cfg, double q, double x,
                      const McConfig& mc);

/// Per-bin E^x[int_0^rho e^{-qt} 1{X_t in bin} dt] / bin width, on fixed
/// steps of size mc.dt.
std::vector<McEstimate> estimate_v_density(const ModelSpec& model, const TwoPointConfig& cfg, double q,
                                           double x, const std::vector<double>& edges, const McConfig& mc);

/// E^z[e^{-lambda (T_y - S)}; T_y < horizon], S the last visit to x before
/// T_y (0 if there is none), x < y.
McEstimate estimate_last_visit(const ModelSpec& model, double lambda, double z, double x, double y,
                               const McConfig& mc);

}  // namespace twopoint
