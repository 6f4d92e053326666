#include "dshock/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "dshock/error.hpp"

namespace dshock {

namespace {

constexpr int kMaxOrder = 64;

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static const std::array<GaussRule, kMaxOrder + 1> rules = [] {
    std::array<GaussRule, kMaxOrder + 1> r;
    r[1] = GaussRule{{0.0}, {2.0}};
    for (int n = 2; n <= kMaxOrder; ++n) r[n] = build_rule(n);
    return r;
  }();
  if (order < 1 || order > kMaxOrder) {
    throw Error(Errc::kInvalidInput, "Gauss-Legendre order out of range");
  }
  return rules[order];
}

}  // namespace dshock
