#include "dshock/flux.hpp"

#include <algorithm>
#include <cmath>

namespace dshock {

namespace {

template <typename T>
T ipow(T base, int n) {
  T r(1.0);
  for (int k = 0; k < n; ++k) r *= base;
  return r;
}

template <typename T>
T evaluate(const std::vector<Monomial>& terms, T u, T v) {
  T sum(0.0);
  for (const auto& m : terms) {
    sum += m.coef * ipow(u, m.pu) * ipow(v, m.pv);
  }
  return sum;
}

Direction unit(double a, double b) {
  const double n = std::hypot(a, b);
  return {a / n, b / n};
}

// Null vector of [[a-l, b], [c, d-l]] taken from the better conditioned row.
Direction null_vector(const Jacobian& j, double l) {
  const double row1 = std::hypot(j.fu - l, j.fv);
  const double row2 = std::hypot(j.gu, j.gv - l);
  if (row1 == 0.0 && row2 == 0.0) return {1.0, 0.0};
  if (row1 >= row2) return unit(j.fv, l - j.fu);
  return unit(l - j.gv, j.gu);
}

}  // namespace

Polynomial::Polynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  for (const auto& m : terms_) {
    if (m.pu < 0 || m.pv < 0 || !std::isfinite(m.coef)) {
      throw Error(Errc::kInvalidInput, "polynomial term with negative power or non-finite coefficient");
    }
  }
}

double Polynomial::operator()(double u, double v) const { return evaluate(terms_, u, v); }

Complex Polynomial::operator()(Complex u, Complex v) const { return evaluate(terms_, u, v); }

double Polynomial::d_du(double u, double v) const {
  double sum = 0.0;
  for (const auto& m : terms_) {
    if (m.pu == 0) continue;
    sum += m.coef * m.pu * ipow(u, m.pu - 1) * ipow(v, m.pv);
  }
  return sum;
}

double Polynomial::d_dv(double u, double v) const {
  double sum = 0.0;
  for (const auto& m : terms_) {
    if (m.pv == 0) continue;
    sum += m.coef * m.pv * ipow(u, m.pu) * ipow(v, m.pv - 1);
  }
  return sum;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.pu + m.pv);
  return d;
}

Jacobian FluxPair::jacobian(const State& s) const {
  return {f_.d_du(s.u, s.v), f_.d_dv(s.u, s.v), g_.d_du(s.u, s.v), g_.d_dv(s.u, s.v)};
}

FluxPair brio_flux() {
  return FluxPair("brio",
                  Polynomial({{0.5, 2, 0}, {0.5, 0, 2}}),
                  Polynomial({{1.0, 1, 1}, {-1.0, 0, 1}}));
}

std::pair<Complex, Complex> eval_flux(const FluxPair& flux, Complex u, Complex v) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) ||
      !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(Errc::kInvalidInput, "eval_flux: non-finite argument");
  }
  return {flux.f()(u, v), flux.g()(u, v)};
}

EigenDecomposition jacobian_eigen(const FluxPair& flux, const State& s) {
  if (!s.finite()) throw Error(Errc::kInvalidInput, "jacobian_eigen: non-finite state");
  const Jacobian j = flux.jacobian(s);
  const double half_trace = 0.5 * (j.fu + j.gv);
  // (a-d)^2/4 + bc avoids the cancellation in trace^2/4 - det.
  const double half_diff = 0.5 * (j.fu - j.gv);
  const double disc = half_diff * half_diff + j.fv * j.gu;
  if (disc < 0.0) {
    throw Error(Errc::kNotHyperbolic, "complex eigenvalues at (" + std::to_string(s.u) +
                                          ", " + std::to_string(s.v) + ")");
  }
  const double root = std::sqrt(disc);
  if (root == 0.0 && (j.fv != 0.0 || j.gu != 0.0)) {
    throw Error(Errc::kNotHyperbolic, "defective Jacobian (repeated eigenvalue)");
  }
  EigenDecomposition e{};
  e.lambda1 = half_trace - root;
  e.lambda2 = half_trace + root;
  if (root == 0.0) {
    e.r1 = {1.0, 0.0};
    e.r2 = {0.0, 1.0};
  } else {
    e.r1 = null_vector(j, e.lambda1);
    e.r2 = null_vector(j, e.lambda2);
  }
  return e;
}

}  // namespace dshock
