#include "twopoint/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/gamma.hpp>
#include <functional>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "twopoint/errors.hpp"

namespace twopoint {

Philox4x32::Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
      counter_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

Philox4x32::Block Philox4x32::bijection(Block c, std::array<std::uint32_t, 2> k) noexcept {
  constexpr std::uint64_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t p0 = m0 * c[0];
    std::uint64_t p1 = m1 * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
    k[0] += 0x9E3779B9u;
    k[1] += 0xBB67AE85u;
  }
  return c;
}

Philox4x32::result_type Philox4x32::operator()() noexcept {
  if (used_ == 4) {
    buffer_ = bijection(counter_, key_);
    if (++counter_[0] == 0) ++counter_[1];
    used_ = 0;
  }
  return buffer_[used_++];
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Adaptive steps keep the typical move over one step a small fraction of
// the distance to the nearest level that must not be missed. With bridge
// detection touches inside a step are exact, so only the far level matters;
// otherwise a path can dip below a level by a jump and creep back unseen
// within one step, and the margin has to be wide.
constexpr double kBridgeMargin = 6.0;
constexpr double kEndpointMargin = 40.0;
constexpr double kMaxStep = 1.0;
// Allowance C dt^{1/index} for models whose crossings are only seen at step
// ends; C calibrated on Brownian motion with bridge detection switched off.
constexpr double kEndpointAllowance = 1.0;
constexpr std::uint64_t kBlockPaths = 1024;

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t path) : gen_(seed, path) {}

  double normal() { return normal_(gen_); }
  double exponential() { return exponential_(gen_); }
  double uniform() { return uniform_(gen_); }
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    return boost::random::poisson_distribution<long, double>(mean)(gen_);
  }

 private:
  Philox4x32 gen_;
  boost::random::normal_distribution<double> normal_;
  boost::random::exponential_distribution<double> exponential_;
  boost::random::uniform_01<double> uniform_;
};

// Upper incomplete gamma Gamma(s, x) for s in (-2, 0) and x > 0, by the
// recurrence Gamma(s, x) = (Gamma(s + 1, x) - x^s e^{-x}) / s.
double upper_gamma_negative(double s, double x) {
  if (s > 0.0) return boost::math::tgamma(s, x);
  return (upper_gamma_negative(s + 1.0, x) - std::pow(x, s) * std::exp(-x)) / s;
}

// Draws increments of a model. Increments split into a continuous part
// (drift, Gaussian, stable) and downward compound Poisson jumps placed at the
// end of the step.
class PathSampler {
 public:
  PathSampler(const ModelSpec& model, const McConfig& mc) : dt_(mc.dt), adaptive_(mc.adaptive_steps) {
    if (!validate(model).valid) throw DomainError("model rejected: " + validate(model).message);
    drift_ = model.gamma();
    double gauss_var = model.sigma() * model.sigma();
    std::visit(
        [&](const auto& j) {
          using T = std::decay_t<decltype(j)>;
          if constexpr (std::is_same_v<T, StableJumps>) {
            alpha_ = j.alpha;
            // E e^{lambda S} = e^{c lambda^alpha} for S = -scale * (standard
            // totally right-skewed stable variable).
            stable_scale_ = std::pow(-j.c * std::cos(std::numbers::pi * j.alpha / 2), 1.0 / j.alpha);
            level_scale_ = std::pow(j.c, 1.0 / j.alpha);
          } else if constexpr (std::is_same_v<T, TemperedStableJumps>) {
            const double eps = mc.small_jump_eps;
            if (!(eps > 0.0)) throw DomainError("small_jump_eps must be > 0");
            const double k = j.c / std::tgamma(-j.alpha);
            const double th = j.theta;
            double small_var, rate, mean;
            if (th == 0.0) {
              small_var = std::pow(eps, 2.0 - j.alpha) / (2.0 - j.alpha);
              rate = std::pow(eps, -j.alpha) / j.alpha;
              mean = std::pow(eps, 1.0 - j.alpha) / (j.alpha - 1.0);
            } else {
              small_var = std::pow(th, j.alpha - 2.0) * boost::math::tgamma_lower(2.0 - j.alpha, th * eps);
              rate = std::pow(th, j.alpha) * upper_gamma_negative(-j.alpha, th * eps);
              mean = std::pow(th, j.alpha - 1.0) * upper_gamma_negative(1.0 - j.alpha, th * eps);
            }
            gauss_var += k * small_var;
            jump_rate_ = k * rate;
            drift_ += k * mean;
            tempered_ = true;
            eps_ = eps;
            theta_ = th;
            alpha_ = j.alpha;
          } else if constexpr (std::is_same_v<T, CompoundPoissonExpJumps>) {
            jump_rate_ = j.rate;
            jump_mean_ = j.mean;
          }
        },
        model.jumps());
    gauss_sd_ = std::sqrt(gauss_var);
    // Steps grow only when every component has a scaling law.
    if (jump_rate_ > 0.0) adaptive_ = false;
  }

  bool bridge() const { return gauss_sd_ > 0.0 && stable_scale_ == 0.0; }
  bool creeps_down() const { return gauss_sd_ > 0.0; }
  double gauss_sd() const { return gauss_sd_; }
  double dt() const { return dt_; }

  // Index of self-similarity of the dominant small-time component.
  double index() const { return stable_scale_ > 0.0 || tempered_ ? alpha_ : 2.0; }

  // `nearest` is the distance to the closest watched level, `spacing` the
  // distance between the two watched levels.
  double step(double nearest, double spacing, double remaining) const {
    double s = dt_;
    if (adaptive_) {
      s = kInf;
      if (bridge()) {
        double d = std::max(nearest, 0.5 * spacing) / kBridgeMargin;
        s = (d / gauss_sd_) * (d / gauss_sd_);
        if (drift_ != 0.0) s = std::min(s, d / std::abs(drift_));
      } else {
        double d = nearest / kEndpointMargin;
        if (gauss_sd_ > 0.0) s = std::min(s, (d / gauss_sd_) * (d / gauss_sd_));
        if (stable_scale_ > 0.0) s = std::min(s, std::pow(d / level_scale_, alpha_));
        if (drift_ != 0.0) s = std::min(s, d / std::abs(drift_));
      }
      s = std::clamp(s, dt_, kMaxStep);
    }
    return std::min(s, remaining);
  }

  double continuous(Stream& rng, double h) const {
    double x = drift_ * h;
    if (gauss_sd_ > 0.0) x += gauss_sd_ * std::sqrt(h) * rng.normal();
    if (stable_scale_ > 0.0) x -= stable_scale_ * std::pow(h, 1.0 / alpha_) * skewed_stable(rng);
    return x;
  }

  double jumps(Stream& rng, double h) const {
    if (jump_rate_ == 0.0) return 0.0;
    long n = rng.poisson(jump_rate_ * h);
    double total = 0.0;
    for (long i = 0; i < n; ++i) total += tempered_ ? tempered_jump(rng) : jump_mean_ * rng.exponential();
    return -total;
  }

 private:
  // Standard S_alpha(1, 1, 0) variable (Chambers-Mallows-Stuck).
  double skewed_stable(Stream& rng) const {
    const double pi = std::numbers::pi;
    double v = pi * (rng.uniform() - 0.5);
    double w = rng.exponential();
    double t = std::tan(pi * alpha_ / 2);
    double b = std::atan(t) / alpha_;
    double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha_));
    double arg = alpha_ * (v + b);
    return s * std::sin(arg) / std::pow(std::cos(v), 1.0 / alpha_) *
           std::pow(std::cos(v - arg) / w, (1.0 - alpha_) / alpha_);
  }

  // Size of a jump larger than eps: Pareto(alpha) proposal, accepted with
  // probability e^{-theta (u - eps)}.
  double tempered_jump(Stream& rng) const {
    for (;;) {
      double u = eps_ * std::pow(1.0 - rng.uniform(), -1.0 / alpha_);
      if (theta_ == 0.0 || rng.uniform() < std::exp(-theta_ * (u - eps_))) return u;
    }
  }

  double dt_;
  bool adaptive_;
  double drift_ = 0.0;
  double gauss_sd_ = 0.0;
  double alpha_ = 2.0;
  double stable_scale_ = 0.0;
  double level_scale_ = 0.0;
  double jump_rate_ = 0.0;
  double jump_mean_ = 0.0;
  bool tempered_ = false;
  double eps_ = 0.0;
  double theta_ = 0.0;
};

// Probability that a Brownian bridge of variance rate s2 from u to v over
// time h touches `level`.
double bridge_touch(double u, double v, double level, double s2, double h) {
  double du = level - u, dv = level - v;
  if (du * dv <= 0.0) return 1.0;
  return std::exp(-2.0 * du * dv / (s2 * h));
}

// First time a Brownian bridge from (t0, x0) to (t1, x1), known to touch
// `level`, does so; resolved by conditional bisection down to dt.
double bridge_first_touch(Stream& rng, double t0, double x0, double t1, double x1, double level, double sd,
                          double dt) {
  const double s2 = sd * sd;
  while (t1 - t0 > dt) {
    double h = 0.5 * (t1 - t0);
    double tm = t0 + h;
    for (;;) {
      double m = 0.5 * (x0 + x1) + sd * std::sqrt(0.5 * h) * rng.normal();
      if (rng.uniform() < bridge_touch(x0, m, level, s2, h)) {
        t1 = tm;
        x1 = m;
        break;
      }
      if (rng.uniform() < bridge_touch(m, x1, level, s2, h)) {
        t0 = tm;
        x0 = m;
        break;
      }
    }
  }
  return 0.5 * (t0 + t1);
}

struct Touch {
  bool hit = false;
  double time = 0.0;
};

// Whether the continuous part of a step, from (t, x0) to (t + h, x1), visits
// `level`; `last` asks for the last such time rather than the first.
Touch visit(const PathSampler& ps, Stream& rng, double t, double h, double x0, double x1, double level,
            bool last) {
  if (ps.bridge()) {
    double p = bridge_touch(x0, x1, level, ps.gauss_sd() * ps.gauss_sd(), h);
    if (p < 1.0 && !(rng.uniform() < p)) return {};
    if (last) return {true, t + h - bridge_first_touch(rng, 0.0, x1, h, x0, level, ps.gauss_sd(), ps.dt())};
    return {true, bridge_first_touch(rng, t, x0, t + h, x1, level, ps.gauss_sd(), ps.dt())};
  }
  bool up = x0 < level && x1 >= level;
  bool down = ps.creeps_down() && x0 > level && x1 <= level;
  if (!up && !down) return {};
  return {true, t + h * (level - x0) / (x1 - x0)};
}

struct PathOutcome {
  double value = 0.0;
  bool truncated = false;
};

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t truncated = 0;
};

void check_mc(const McConfig& mc) {
  if (mc.paths < 2) throw DomainError("mc: need at least two paths");
  if (!(mc.dt > 0.0) || !(mc.horizon > 0.0) || mc.dt > mc.horizon)
    throw DomainError("mc: need 0 < dt <= horizon");
  if (mc.workers < 1) throw DomainError("mc: need at least one worker");
}

// Runs `path_fn(path_index)` for every path, `width` outputs per path, in
// fixed blocks; partial sums are combined in block order, so the result does
// not depend on the number of workers.
template <class PathFn>
std::vector<BlockSums> run_paths(const McConfig& mc, std::size_t width, PathFn path_fn) {
  const std::uint64_t blocks = (mc.paths + kBlockPaths - 1) / kBlockPaths;
  std::vector<std::vector<BlockSums>> partial(blocks, std::vector<BlockSums>(width));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    std::vector<double> out(width);
    for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) {
      auto& sums = partial[b];
      std::uint64_t end = std::min(mc.paths, (b + 1) * kBlockPaths);
      for (std::uint64_t p = b * kBlockPaths; p < end; ++p) {
        bool truncated = path_fn(p, out);
        for (std::size_t i = 0; i < width; ++i) {
          sums[i].sum += out[i];
          sums[i].sum_sq += out[i] * out[i];
          sums[i].truncated += truncated ? 1 : 0;
        }
      }
    }
  };
  unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(mc.workers, blocks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::vector<BlockSums> total(width);
  for (const auto& sums : partial)
    for (std::size_t i = 0; i < width; ++i) {
      total[i].sum += sums[i].sum;
      total[i].sum_sq += sums[i].sum_sq;
      total[i].truncated += sums[i].truncated;
    }
  return total;
}

McEstimate summarize(const BlockSums& s, std::uint64_t n, double scale = 1.0) {
  McEstimate e;
  double mean = s.sum / static_cast<double>(n);
  double var = std::max(0.0, (s.sum_sq - s.sum * mean) / static_cast<double>(n - 1));
  e.value = scale * mean;
  e.std_error = scale * std::sqrt(var / static_cast<double>(n));
  e.paths_used = n;
  return e;
}

// Hitting time of {-a, a} from x, or nullopt past the horizon.
std::optional<double> hitting_time(const PathSampler& ps, Stream& rng, double a, double x, double horizon,
                                   const std::function<void(double, double, double)>& on_step = {}) {
  if (x == a || x == -a) return 0.0;
  double t = 0.0;
  while (t < horizon) {
    double h = ps.step(std::min(std::abs(x - a), std::abs(x + a)), 2 * a, horizon - t);
    double xc = x + ps.continuous(rng, h);
    Touch hit;
    if (x < -a) {
      hit = visit(ps, rng, t, h, x, xc, -a, false);
    } else if (x < a) {
      Touch up = visit(ps, rng, t, h, x, xc, a, false);
      Touch down = visit(ps, rng, t, h, x, xc, -a, false);
      if (up.hit && (!down.hit || up.time <= down.time))
        hit = up;
      else
        hit = down;
    } else {
      hit = visit(ps, rng, t, h, x, xc, a, false);
      if (!hit.hit && xc < -a) hit = visit(ps, rng, t, h, x, xc, -a, false);
    }
    if (hit.hit) {
      if (on_step) on_step(t, x, hit.time - t);
      return hit.time;
    }
    if (on_step) on_step(t, x, h);
    x = xc + ps.jumps(rng, h);
    t += h;
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> simulate_increments(const ModelSpec& model, const McConfig& mc, std::uint64_t path,
                                        std::size_t steps) {
  check_mc(mc);
  McConfig fixed = mc;
  fixed.adaptive_steps = false;
  PathSampler ps(model, fixed);
  Stream rng(mc.seed, path);
  std::vector<double> out(steps);
  for (auto& inc : out) {
    inc = ps.continuous(rng, mc.dt);
    inc += ps.jumps(rng, mc.dt);
  }
  return out;
}

McEstimate estimate_h(const ModelSpec& model, const TwoPointConfig& cfg, double q, double x,
                      const McConfig& mc) {
  if (!(q > 0.0)) throw DomainError("q must be > 0");
  check_mc(mc);
  PathSampler ps(model, mc);
  auto sums = run_paths(mc, 1, [&](std::uint64_t p, std::vector<double>& out) {
    Stream rng(mc.seed, p);
    auto rho = hitting_time(ps, rng, cfg.a, x, mc.horizon);
    out[0] = rho ? -std::expm1(-q * *rho) : 1.0;
    return !rho;
  });
  McEstimate e = summarize(sums[0], mc.paths);
  e.truncation_bias = std::exp(-q * mc.horizon);
  e.discretization_allowance =
      ps.bridge() ? q * mc.dt : kEndpointAllowance * std::pow(mc.dt, 1.0 / ps.index());
  return e;
}

std::vector<McEstimate> estimate_v_density(const ModelSpec& model, const TwoPointConfig& cfg, double q,
                                           double x, const std::vector<double>& edges, const McConfig& mc) {
  if (!(q > 0.0)) throw DomainError("q must be > 0");
  check_mc(mc);
  if (edges.size() < 2) throw DomainError("need at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw DomainError("bin edges must be strictly increasing");
  McConfig fixed = mc;
  fixed.adaptive_steps = false;
  PathSampler ps(model, fixed);
  const std::size_t bins = edges.size() - 1;
  auto sums = run_paths(fixed, bins, [&](std::uint64_t p, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    Stream rng(mc.seed, p);
    auto occupy = [&](double t, double pos, double h) {
      if (pos < edges.front() || pos >= edges.back()) return;
      auto it = std::upper_bound(edges.begin(), edges.end(), pos);
      out[static_cast<std::size_t>(it - edges.begin()) - 1] += std::exp(-q * t) * h;
    };
    return !hitting_time(ps, rng, cfg.a, x, mc.horizon, occupy);
  });
  std::vector<McEstimate> result;
  for (std::size_t i = 0; i < bins; ++i) {
    double width = edges[i + 1] - edges[i];
    McEstimate e = summarize(sums[i], mc.paths, 1.0 / width);
    e.truncation_bias = std::exp(-q * mc.horizon) / (q * width);
    e.discretization_allowance = kEndpointAllowance * std::pow(mc.dt, 1.0 / ps.index()) / q;
    result.push_back(e);
  }
  return result;
}

McEstimate estimate_last_visit(const ModelSpec& model, double lambda, double z, double x, double y,
                               const McConfig& mc) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (!(x < y)) throw DomainError("last visit requires x < y");
  check_mc(mc);
  PathSampler ps(model, mc);
  auto sums = run_paths(mc, 1, [&](std::uint64_t p, std::vector<double>& out) {
    Stream rng(mc.seed, p);
    out[0] = 0.0;
    if (z == y) {
      out[0] = 1.0;
      return false;
    }
    double pos = z, t = 0.0, last = 0.0;
    while (t < mc.horizon) {
      double h = ps.step(std::min(std::abs(pos - x), std::abs(pos - y)), y - x, mc.horizon - t);
      double xc = pos + ps.continuous(rng, h);
      Touch hit_y = visit(ps, rng, t, h, pos, xc, y, false);
      Touch at_x = visit(ps, rng, t, h, pos, xc, x, !hit_y.hit);
      if (at_x.hit && (!hit_y.hit || at_x.time < hit_y.time)) last = at_x.time;
      if (hit_y.hit) {
        out[0] = std::exp(-lambda * (hit_y.time - last));
        return false;
      }
      pos = xc + ps.jumps(rng, h);
      t += h;
    }
    return true;
  });
  McEstimate e = summarize(sums[0], mc.paths);
  e.truncation_bias = static_cast<double>(sums[0].truncated) / static_cast<double>(mc.paths);
  e.discretization_allowance = ps.bridge() ? std::max(lambda, 1.0) * mc.dt
                                           : kEndpointAllowance * std::max(lambda, 1.0) *
                                                 std::pow(mc.dt, 1.0 / ps.index());
  return e;
}

}  // namespace twopoint
