#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "dshock/error.hpp"
#include "dshock/gendelta.hpp"

namespace dshock::gendelta {
namespace {

TEST(DeltaShockCarrierV, BrioExample) {
  const auto spec = delta_shock_carrier_v(brio_flux(), RiemannData({1, 1}, {0, 0}));
  // [f] = -1, [u] = -1, [v] = -1, [g] = 0
  EXPECT_EQ(spec.speed, 1.0);
  EXPECT_EQ(spec.amplitude_rate, -1.0);
  EXPECT_EQ(spec.carrier, Carrier::kV);
  const SingularSolution sol = spec.solution();
  ASSERT_EQ(sol.graph.arcs.size(), 1u);
  EXPECT_EQ(sol.graph.arcs[0].amplitude(0.0), 0.0);
  EXPECT_EQ(sol.graph.arcs[0].amplitude(2.0), -2.0);
}

TEST(DeltaShockCarrierV, DegenerateJump) {
  try {
    delta_shock_carrier_v(brio_flux(), RiemannData({0, 1}, {0, -1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateJump);
  }
}

TEST(DeltaShockCarrierV, ZeroAmplitudeIsClassicalShock) {
  // g linear in v and [v] = 0 forces alpha' = 0
  const FluxPair flux("linear-g", Polynomial({{0.5, 2, 0}}), Polynomial({{1.0, 0, 1}}));
  const auto spec = delta_shock_carrier_v(flux, RiemannData({1, 0}, {0, 0}));
  EXPECT_EQ(spec.speed, 0.5);
  EXPECT_EQ(spec.amplitude_rate, 0.0);
}

TEST(DeltaShockCarrierU, BrioExamples) {
  const FluxPair brio = brio_flux();
  const auto a = delta_shock_carrier_u(brio, RiemannData({3, 1}, {0, -1}));
  EXPECT_EQ(a.speed, 0.5);
  EXPECT_EQ(a.amplitude_rate, 3.0);
  const auto b = delta_shock_carrier_u(brio, RiemannData({1, 1}, {1, -1}));
  EXPECT_EQ(b.speed, 0.0);
  EXPECT_EQ(b.amplitude_rate, 0.0);
  for (double ut : {-1.0, 0.0, 0.7, 2.0}) {
    for (double v2 : {-0.3, -1.0, -2.5}) {
      const auto s = delta_shock_carrier_u(brio, RiemannData({ut, 0}, {ut, v2}));
      EXPECT_NEAR(s.speed, ut - 1.0, 1e-15);
      EXPECT_NEAR(s.amplitude_rate, -0.5 * v2 * v2, 1e-15);
    }
  }
  try {
    delta_shock_carrier_u(brio, RiemannData({0, 1}, {2, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateJump);
  }
}

TEST(DeltaShock, AmplitudeIsLinearInTime) {
  const auto spec = delta_shock_carrier_u(brio_flux(), RiemannData({3, 1}, {0, -1}));
  const Arc arc = spec.solution().graph.arcs.front();
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    EXPECT_DOUBLE_EQ(arc.amplitude(t) / t, spec.amplitude_rate);
  }
}

TEST(DeltaShock, SwapSymmetry) {
  const FluxPair brio = brio_flux();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const State l{d(rng), d(rng)}, r{d(rng), d(rng)};
    const auto fwd_v = delta_shock_carrier_v(brio, RiemannData(l, r));
    const auto bwd_v = delta_shock_carrier_v(brio, RiemannData(r, l));
    EXPECT_NEAR(fwd_v.speed, bwd_v.speed, 1e-12 * (1 + std::abs(fwd_v.speed)));
    EXPECT_NEAR(fwd_v.amplitude_rate, -bwd_v.amplitude_rate,
                1e-12 * (1 + std::abs(fwd_v.amplitude_rate)));
    const auto fwd_u = delta_shock_carrier_u(brio, RiemannData(l, r));
    const auto bwd_u = delta_shock_carrier_u(brio, RiemannData(r, l));
    EXPECT_NEAR(fwd_u.speed, bwd_u.speed, 1e-12 * (1 + std::abs(fwd_u.speed)));
    EXPECT_NEAR(fwd_u.amplitude_rate, -bwd_u.amplitude_rate,
                1e-12 * (1 + std::abs(fwd_u.amplitude_rate)));
  }
}

TEST(NonuniquenessPair, Structure) {
  const SingularSolution sol = nonuniqueness_pair(1.0, -1.0, 1.0);
  EXPECT_EQ(sol.carrier, Carrier::kV);
  ASSERT_EQ(sol.graph.arcs.size(), 2u);
  EXPECT_EQ(sol.graph.arcs[0].position(1.0), -1.0);
  EXPECT_EQ(sol.graph.arcs[1].position(1.0), 1.0);
  EXPECT_EQ(sol.graph.arcs[0].amplitude(3.0), 1.0);
  EXPECT_EQ(sol.graph.arcs[1].amplitude(3.0), -1.0);
  EXPECT_EQ(sol.background.at(0.3, 0.7), (State{0, 0}));

  const SingularSolution zero = nonuniqueness_pair(0.0, 0.4, -2.0);
  for (const Arc& a : zero.graph.arcs) EXPECT_EQ(a.amplitude(5.0), 0.0);
}

}  // namespace
}  // namespace dshock::gendelta
