#ifndef DSHOCK_ROOTS_HPP_
#define DSHOCK_ROOTS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dshock/error.hpp"

namespace dshock {

struct RootOptions {
  double tol = 1e-12;  // on |f(x)|
  int max_iter = 200;
  int scan_points = 256;
};

// Sub-intervals of [a, b] (uniform grid of n points) on which f changes sign.
// Exact zeros on grid points are returned as degenerate brackets [x, x].
template <typename F>
std::vector<std::pair<double, double>> scan_brackets(F&& f, double a, double b, int n = 256) {
  std::vector<std::pair<double, double>> out;
  if (n < 2) n = 2;
  double x_prev = a;
  double f_prev = f(a);
  if (f_prev == 0.0) out.emplace_back(a, a);
  for (int k = 1; k < n; ++k) {
    const double x = (k == n - 1) ? b : a + (b - a) * k / (n - 1);
    const double fx = f(x);
    if (fx == 0.0) {
      out.emplace_back(x, x);
    } else if (std::isfinite(f_prev) && std::isfinite(fx) && f_prev != 0.0 &&
               std::signbit(f_prev) != std::signbit(fx)) {
      out.emplace_back(x_prev, x);
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

// Bracketed bisection with secant acceleration on [a, b]; f(a) and f(b) must
// differ in sign. Stops when |f| <= tol or the bracket collapses.
template <typename F>
double refine_root(F&& f, double a, double b, const RootOptions& opt = {}) {
  if (a == b) return a;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    throw Error(Errc::kNoBracket, "refine_root: f(" + std::to_string(a) + ") and f(" +
                                      std::to_string(b) + ") have the same sign");
  }
  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double f_best = std::min(std::abs(fa), std::abs(fb));
  for (int it = 0; it < opt.max_iter; ++it) {
    double x = b - fb * (b - a) / (fb - fa);
    const double width = std::abs(b - a);
    // fall back to bisection when the secant point hugs an endpoint
    if (!(std::abs(x - a) > 0.05 * width && std::abs(b - x) > 0.05 * width) || (it % 4 == 3)) {
      x = 0.5 * (a + b);
    }
    const double fx = f(x);
    if (std::abs(fx) < f_best) {
      best = x;
      f_best = std::abs(fx);
    }
    if (fx == 0.0 || f_best <= opt.tol) return best;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::abs(x))) {
      return best;
    }
  }
  return best;
}

// Unique-ish root on [a, b]: scan for brackets and refine the first one.
template <typename F>
double find_root(F&& f, double a, double b, const RootOptions& opt = {}) {
  const auto brackets = scan_brackets(f, a, b, opt.scan_points);
  if (brackets.empty()) {
    throw Error(Errc::kNoBracket, "no sign change on [" + std::to_string(a) + ", " +
                                      std::to_string(b) + "]");
  }
  return refine_root(f, brackets.front().first, brackets.front().second, opt);
}

}  // namespace dshock

#endif  // DSHOCK_ROOTS_HPP_
