#include "twopoint/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>

namespace twopoint {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

// One 15-point Kronrod panel with the embedded 7-point Gauss rule as error
// estimate. (Boost's own non-adaptive call reports the error of the rule on
// [-1, 1] without the half-width factor.)
template <class F>
double kronrod_panel(const F& f, double lo, double hi, double* error) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double f0 = f(c);
  double k = f0 * wk[0], g = f0 * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    double pair = f(c + h * x[i]) + f(c - h * x[i]);
    k += pair * wk[i];
    if (i % 2 == 0) g += pair * wg[i / 2];
  }
  *error = std::max(std::abs(k - g), 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k)) * h;
  return k * h;
}

struct Panel {
  double lo, hi, value, error;
  int map;  // 0: identity, +1: [base, inf), -1: (-inf, base]
  double base;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::vector<double> breakpoints, const QuadratureOptions& opts) {
  QuadratureResult out;
  if (!(lo < hi)) return out;

  std::vector<double> pts{lo};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double b : breakpoints)
    if (std::isfinite(b) && b > pts.back() && b < hi) pts.push_back(b);
  pts.push_back(hi);
  // Infinite ends need a finite anchor for the half-line map.
  if (std::isinf(pts.front()) && std::isinf(pts.back()) && pts.size() == 2) pts.insert(pts.begin() + 1, 0.0);

  auto mapped = [&](int map, double base) {
    return [&f, map, base, &out](double t) {
      ++out.evaluations;
      if (map == 0) return f(t);
      double u = t / (1.0 - t);
      double jac = 1.0 / ((1.0 - t) * (1.0 - t));
      double v = f(map > 0 ? base + u : base - u);
      return v == 0.0 ? 0.0 : v * jac;
    };
  };
  auto evaluate = [&](Panel p) {
    double err = 0.0;
    p.value = kronrod_panel(mapped(p.map, p.base), p.lo, p.hi, &err);
    p.error = err;
    return p;
  };

  std::priority_queue<Panel> heap;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    if (std::isinf(a))
      heap.push(evaluate({0.0, 1.0, 0.0, 0.0, -1, b}));
    else if (std::isinf(b))
      heap.push(evaluate({0.0, 1.0, 0.0, 0.0, +1, a}));
    else
      heap.push(evaluate({a, b, 0.0, 0.0, 0, 0.0}));
  }

  auto totals = [&]() {
    auto copy = heap;
    double v = 0.0, e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::make_pair(v, e);
  };

  double value = 0.0, error = 0.0;
  std::tie(value, error) = totals();
  int panels = static_cast<int>(heap.size());
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value)) && panels < opts.max_subdivisions) {
    Panel worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Cannot split further; keep it and stop refining.
      heap.push(worst);
      break;
    }
    Panel left = evaluate({worst.lo, mid, 0.0, 0.0, worst.map, worst.base});
    Panel right = evaluate({mid, worst.hi, 0.0, 0.0, worst.map, worst.base});
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    if (panels % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(out.value, out.error) = totals();
  return out;
}

}  // namespace twopoint
