#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "dshock/error.hpp"
#include "dshock/flux.hpp"
#include "dshock/mollifier.hpp"
#include "dshock/profile.hpp"
#include "dshock/quadrature.hpp"
#include "dshock/roots.hpp"
#include "dshock/shock_graph.hpp"
#include "dshock/wave_fan.hpp"

namespace dshock {
namespace {

TEST(Flux, BrioValues) {
  const FluxPair brio = brio_flux();
  auto [f1, g1] = eval_flux(brio, {1.0, 0.0}, {1.0, 0.0});
  EXPECT_EQ(f1, Complex(1.0, 0.0));
  EXPECT_EQ(g1, Complex(0.0, 0.0));
  auto [f0, g0] = eval_flux(brio, {0.0, 0.0}, {0.0, 0.0});
  EXPECT_EQ(f0, Complex(0.0, 0.0));
  EXPECT_EQ(g0, Complex(0.0, 0.0));
  // (0, i): f = i^2/2 = -1/2, g = i (0 - 1) = -i
  auto [fi, gi] = eval_flux(brio, {0.0, 0.0}, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(fi.real(), -0.5);
  EXPECT_DOUBLE_EQ(fi.imag(), 0.0);
  EXPECT_DOUBLE_EQ(gi.real(), 0.0);
  EXPECT_DOUBLE_EQ(gi.imag(), -1.0);
}

TEST(Flux, RejectsNonFinite) {
  const FluxPair brio = brio_flux();
  try {
    eval_flux(brio, {std::nan(""), 0.0}, {0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidInput);
  }
}

TEST(Flux, RealRestrictionHasZeroImaginaryPart) {
  const FluxPair brio = brio_flux();
  const FluxPair cubic("cubic", Polynomial({{1.0 / 3.0, 3, 0}, {1.0, 0, 1}}),
                       Polynomial({{1.0, 1, 1}, {0.5, 0, 2}, {-2.0, 2, 1}}));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int k = 0; k < 500; ++k) {
    const double u = dist(rng), v = dist(rng);
    for (const FluxPair* fp : {&brio, &cubic}) {
      auto [f, g] = eval_flux(*fp, {u, 0.0}, {v, 0.0});
      EXPECT_EQ(f.imag(), 0.0);
      EXPECT_EQ(g.imag(), 0.0);
      auto [fr, gr] = (*fp)(State{u, v});
      EXPECT_EQ(f.real(), fr);
      EXPECT_EQ(g.real(), gr);
    }
  }
}

TEST(JacobianEigen, BrioHandValues) {
  const FluxPair brio = brio_flux();
  auto e0 = jacobian_eigen(brio, {0.0, 0.0});
  EXPECT_NEAR(e0.lambda1, -1.0, 1e-15);
  EXPECT_NEAR(e0.lambda2, 0.0, 1e-15);
  auto e1 = jacobian_eigen(brio, {1.0, 0.0});
  EXPECT_NEAR(e1.lambda1, 0.0, 1e-15);
  EXPECT_NEAR(e1.lambda2, 1.0, 1e-15);
}

TEST(JacobianEigen, EigenpairsAndSpectralGap) {
  const FluxPair brio = brio_flux();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const State s{dist(rng), dist(rng)};
    const auto e = jacobian_eigen(brio, s);
    const Jacobian j = brio.jacobian(s);
    EXPECT_LE(e.lambda1, e.lambda2);
    EXPECT_GE(e.lambda2 - e.lambda1, 1.0);
    EXPECT_NEAR(e.lambda2 - e.lambda1, 2.0 * std::sqrt(0.25 + s.v * s.v), 1e-12);
    for (auto [l, r] : {std::pair{e.lambda1, e.r1}, std::pair{e.lambda2, e.r2}}) {
      EXPECT_NEAR(std::hypot(r[0], r[1]), 1.0, 1e-14);
      EXPECT_NEAR(j.fu * r[0] + j.fv * r[1], l * r[0], 1e-12);
      EXPECT_NEAR(j.gu * r[0] + j.gv * r[1], l * r[1], 1e-12);
    }
  }
}

TEST(JacobianEigen, LossOfHyperbolicity) {
  // f = v, g = -u has eigenvalues +-i
  const FluxPair rot("rotation", Polynomial({{1.0, 0, 1}}), Polynomial({{-1.0, 1, 0}}));
  try {
    jacobian_eigen(rot, {0.3, 0.4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNotHyperbolic);
  }
}

TEST(Quadrature, GaussLegendreIsExactToDegree2nMinus1) {
  for (int n : {1, 2, 5, 8, 12, 20}) {
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double got = integrate([d](double x) { return std::pow(x, d); }, 0.0, 1.0, 1, n);
      EXPECT_NEAR(got, 1.0 / (d + 1), 1e-14) << "n=" << n << " d=" << d;
    }
  }
}

TEST(Mollifier, UnitMassEvenAndNonnegative) {
  // independent reference: trapezoid on a fine grid is spectrally accurate
  // for functions flat to all orders at the ends
  const int n = 20000;
  double trap = 0.0;
  for (int k = 1; k < n; ++k) trap += Mollifier::rho(-1.0 + 2.0 * k / n);
  trap *= 2.0 / n;
  EXPECT_NEAR(trap, 1.0, 1e-12);
  for (int k = 0; k <= 200; ++k) {
    const double z = -1.2 + 2.4 * k / 200;
    EXPECT_EQ(Mollifier::rho(z), Mollifier::rho(-z));
    EXPECT_GE(Mollifier::rho(z), 0.0);
    EXPECT_NEAR(Mollifier::sqrt_rho(z) * Mollifier::sqrt_rho(z), Mollifier::rho(z), 1e-15);
  }
  EXPECT_EQ(Mollifier::rho(1.0), 0.0);
  EXPECT_EQ(Mollifier::rho(-1.0), 0.0);
  // known value of 1 / integral of exp(-1/(1 - z^2))
  EXPECT_NEAR(Mollifier::normalization(), 1.0 / 0.443993816168079437823, 1e-12);
}

TEST(Mollifier, DerivativesMatchFiniteDifferences) {
  const double h = 1e-6;
  for (double z : {-0.9, -0.5, -0.1, 0.0, 0.3, 0.77}) {
    EXPECT_NEAR(Mollifier::drho(z), (Mollifier::rho(z + h) - Mollifier::rho(z - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(Mollifier::dsqrt_rho(z),
                (Mollifier::sqrt_rho(z + h) - Mollifier::sqrt_rho(z - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(dbump(z), (bump(z + h) - bump(z - h)) / (2 * h), 1e-7);
  }
  for (double s : {0.1, 0.4, 0.5, 0.9}) {
    EXPECT_NEAR(dsmooth_step(s), (smooth_step(s + h) - smooth_step(s - h)) / (2 * h), 1e-7);
  }
}

TEST(Mollifier, SmoothStepIsMonotoneRamp) {
  EXPECT_EQ(smooth_step(0.0), 0.0);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_DOUBLE_EQ(smooth_step(0.5), 0.5);
  double prev = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double s = smooth_step(k / 100.0);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(Roots, RefinesBracketedRoot) {
  const double r = find_root([](double x) { return std::cos(x); }, 0.0, 3.0);
  EXPECT_NEAR(r, std::numbers::pi / 2, 1e-12);
  try {
    find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNoBracket);
  }
}

TEST(ShockGraph, ArcsMustBeContinuous) {
  ArcPiece a{0.0, 1.0, 0.0, 1.0, 0.0, 2.0};
  ArcPiece b{1.0, 3.0, 1.0, -1.0, 2.0, 0.0};
  const Arc arc({a, b});
  EXPECT_DOUBLE_EQ(arc.position(2.0), 0.0);
  EXPECT_DOUBLE_EQ(arc.amplitude(0.5), 1.0);
  EXPECT_DOUBLE_EQ(arc.amplitude(2.5), 2.0);
  b.x_begin = 1.5;
  EXPECT_THROW(Arc({a, b}), Error);
  ShockGraph g{{arc, Arc::straight(1.0, 0.5, 0.0, 0.0, 1.0)}};
  EXPECT_EQ(g.initial_indices(), std::vector<std::size_t>{0});
}

TEST(WaveFan, DetectsOrderingViolation) {
  const FluxPair brio = brio_flux();
  WaveFan fan;
  fan.left = {0, 0};
  fan.right = {0, 2};
  ElementaryWave a;
  a.type = WaveType::kDeltaShock;
  a.left = {0, 0};
  a.right = {0, 1};
  a.speed_lo = a.speed_hi = 1.0;
  ElementaryWave b = a;
  b.left = {0, 1};
  b.right = {0, 2};
  b.speed_lo = b.speed_hi = 0.5;
  fan.waves = {a, b};
  try {
    check_fan(fan, brio);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOrderingViolation);
  }
  fan.waves[1].speed_lo = fan.waves[1].speed_hi = 1.0;
  EXPECT_NO_THROW(check_fan(fan, brio));
}

TEST(Profile, TranslatedRiemannProfile) {
  const Profile p = Profile::translated_riemann(RiemannData({1, 2}, {3, 4}, 0.5), 2.0);
  EXPECT_EQ(p.at(0.0, 0.0), (State{1, 2}));
  EXPECT_EQ(p.at(1.0, 0.0), (State{3, 4}));
  EXPECT_EQ(p.at(2.4, 1.0), (State{1, 2}));
  EXPECT_EQ(p.at(2.6, 1.0), (State{3, 4}));
  EXPECT_DOUBLE_EQ(p.breakpoints(1.0).front(), 2.5);
}

}  // namespace
}  // namespace dshock
