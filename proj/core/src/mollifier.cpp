#include "dshock/mollifier.hpp"

#include <cmath>

#include "dshock/quadrature.hpp"

namespace dshock {

namespace {

double raw(double z) {
  const double q = 1.0 - z * z;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

// exp(-1/s) for s > 0
double edge(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double Mollifier::normalization() {
  static const double c = [] {
    const double mass = integrate(raw, -1.0, 1.0, 64, 24);
    return 1.0 / mass;
  }();
  return c;
}

double Mollifier::rho(double z) { return normalization() * raw(z); }

double Mollifier::drho(double z) {
  const double q = 1.0 - z * z;
  if (q <= 0.0) return 0.0;
  return normalization() * std::exp(-1.0 / q) * (-2.0 * z / (q * q));
}

double Mollifier::sqrt_rho(double z) {
  const double q = 1.0 - z * z;
  if (q <= 0.0) return 0.0;
  return std::sqrt(normalization()) * std::exp(-0.5 / q);
}

double Mollifier::dsqrt_rho(double z) {
  const double q = 1.0 - z * z;
  if (q <= 0.0) return 0.0;
  return std::sqrt(normalization()) * std::exp(-0.5 / q) * (-z / (q * q));
}

double bump(double z) {
  const double q = 1.0 - z * z;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

double dbump(double z) {
  const double q = 1.0 - z * z;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q) * (-2.0 * z / (q * q));
}

BumpValue bump_with_slope(double z) {
  const double q = 1.0 - z * z;
  if (q <= 0.0) return {};
  const double b = std::exp(1.0 - 1.0 / q);
  return {b, b * (-2.0 * z / (q * q))};
}

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = edge(s);
  const double b = edge(1.0 - s);
  return a / (a + b);
}

double dsmooth_step(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double a = edge(s);
  const double b = edge(1.0 - s);
  const double da = a / (s * s);
  const double db = -b / ((1.0 - s) * (1.0 - s));
  return (da * b - a * db) / ((a + b) * (a + b));
}

}  // namespace dshock
