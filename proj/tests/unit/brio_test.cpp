#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "dshock/brio.hpp"
#include "dshock/error.hpp"
#include "dshock/weakform.hpp"

namespace dshock::brio {
namespace {

// u_m for L = (0, 1) from the RW1 closed form, evaluated to 30 digits.
constexpr double kUm = 0.377428076220093124455707377653;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::kInvalidInput;
}

double angle(Direction a, Direction b) {
  const double cross = a[0] * b[1] - a[1] * b[0];
  const double dot = a[0] * b[0] + a[1] * b[1];
  return std::abs(std::atan2(cross, dot)) < std::numbers::pi / 2
             ? std::abs(std::atan2(cross, dot))
             : std::numbers::pi - std::abs(std::atan2(cross, dot));
}

void expect_weak_solution(const CompositeSolution& c, double tol) {
  const SingularSolution sol = c.singular_solution();
  const auto battery = weakform::standard_battery(sol);
  const auto rep = weakform::verify(brio_flux(), sol, battery, tol);
  EXPECT_TRUE(rep.pass) << c.construction << ": max residual " << rep.max_residual
                        << ", quadrature change " << rep.max_error_estimate;
}

TEST(Lambda, ClosedForms) {
  EXPECT_EQ(lambda(1, {0.7, 0.0}), 0.7 - 1.0);
  EXPECT_EQ(lambda(2, {0.7, 0.0}), 0.7);
  EXPECT_NEAR(lambda(1, {0, -1}), -1.6180339887498949, 1e-15);
  EXPECT_NEAR(lambda(2, {0, -1}), 0.6180339887498949, 1e-15);
  EXPECT_EQ(code_of([] { lambda(3, {0, 0}); }), Errc::kInvalidInput);
}

TEST(Lambda, AgreesWithNumericEigenvalues) {
  const FluxPair brio = brio_flux();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const State s{d(rng), d(rng)};
    const auto e = jacobian_eigen(brio, s);
    EXPECT_NEAR(lambda(1, s), e.lambda1, 1e-10);
    EXPECT_NEAR(lambda(2, s), e.lambda2, 1e-10);
    EXPECT_NEAR(lambda(2, s) - lambda(1, s), 2.0 * std::sqrt(0.25 + s.v * s.v), 1e-12);
    EXPECT_LT(angle(eigenvector(1, s), e.r1), 1e-8);
    EXPECT_LT(angle(eigenvector(2, s), e.r2), 1e-8);
  }
}

TEST(Rarefaction, ClosedFormValues) {
  const WaveCurve rw1 = rarefaction_curve(1, {0, 1});
  EXPECT_NEAR(rw1.u(0.0), kUm, 1e-15);
  EXPECT_NEAR(rw1.constant(), 0.530854485940120469747, 1e-15);
  for (const State a : {State{0.3, -2.0}, State{-1.0, 0.4}}) {
    EXPECT_NEAR(rarefaction_curve(1, a).u(a.v), a.u, 1e-12);
    EXPECT_NEAR(rarefaction_curve(2, a).u(a.v), a.u, 1e-12);
  }
  const WaveCurve rw2 = rarefaction_curve(2, {0, -1});
  EXPECT_EQ(code_of([&] { rw2.u(0.0); }), Errc::kDomainError);
  EXPECT_EQ(code_of([&] { rw2.u(0.5); }), Errc::kDomainError);
  EXPECT_EQ(code_of([] { rarefaction_curve(2, {1, 0}); }), Errc::kDomainError);
}

TEST(Rarefaction, TangentsFollowEigenvectorsAndSpeedsAreMonotone) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    State a{d(rng), d(rng)};
    if (std::abs(a.v) < 1e-3) a.v = 0.5;
    for (int family : {1, 2}) {
      const WaveCurve c = rarefaction_curve(family, a);
      const double v = a.v * 0.8, h = 1e-5 * std::max(1.0, std::abs(v));
      const Direction tangent{(c.u(v + h) - c.u(v - h)) / (2 * h), 1.0};
      const double n = std::hypot(tangent[0], tangent[1]);
      EXPECT_LT(angle({tangent[0] / n, tangent[1] / n}, eigenvector(family, c.at(v))), 1e-6);
      // speed strictly monotone in |v| on each side of v = 0
      const double s1 = c.speed(0.5 * a.v), s2 = c.speed(a.v);
      if (family == 1) {
        EXPECT_GT(s1, s2);
      } else {
        EXPECT_LT(s1, s2);
      }
    }
  }
}

TEST(Shock, CurveThroughAnchorSatisfiesJumpConditions) {
  const FluxPair brio = brio_flux();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const State a{d(rng), d(rng)};
    for (int branch : {1, 2}) {
      const WaveCurve c = shock_curve(branch, a);
      EXPECT_EQ(c.u(a.v), a.u);
      const auto rep = check_shock_curve(c, a.v - 3.0, a.v + 3.0, 61);
      EXPECT_GT(rep.samples, 50);
      EXPECT_LT(rep.max_rh_residual, 1e-8);
      EXPECT_LT(rep.max_closed_form_gap, 1e-8 * (1 + std::abs(a.u)));
      const double v = a.v + 0.37;
      if (c.contains(v)) {
        const State s = c.at(v);
        const auto [fa, ga] = brio(a);
        const auto [fs, gs] = brio(s);
        EXPECT_NEAR((fs - fa) / (s.u - a.u), (gs - ga) / (s.v - a.v), 1e-8);
      }
    }
  }
  EXPECT_EQ(code_of([] { shock_curve(1, {0.0, 0.5}).u(-0.5); }), Errc::kDomainError);
}

TEST(Shock, BranchTwoLeavesAlongSecondEigenvector) {
  const State a{0.2, 0.6};
  const double h = 1e-6;
  const WaveCurve c2 = shock_curve(2, a);
  const WaveCurve c1 = shock_curve(1, a);
  const Direction t2{(c2.u(a.v + h) - c2.u(a.v - h)) / (2 * h), 1.0};
  const Direction t1{(c1.u(a.v + h) - c1.u(a.v - h)) / (2 * h), 1.0};
  auto unit = [](Direction x) {
    const double n = std::hypot(x[0], x[1]);
    return Direction{x[0] / n, x[1] / n};
  };
  EXPECT_LT(angle(unit(t2), eigenvector(2, a)), 1e-6);
  EXPECT_LT(angle(unit(t1), eigenvector(1, a)), 1e-6);
}

TEST(Admissibility, Examples) {
  EXPECT_TRUE(admissible(1, {0, 0}, {0, -1}, -1.0));
  EXPECT_FALSE(admissible_strict(1, {0, 0}, {0, -1}, -1.0));  // touches lambda_1(L)
  EXPECT_TRUE(admissible(1, {3, 1}, {0, -1}, 0.5));
  EXPECT_FALSE(admissible(1, {3, 1}, {0, -1}, 1.5));
  EXPECT_FALSE(overcompressive({3, 1}, {0, -1}, 0.5));
  for (double v : {-3.0, -0.1, 0.0, 0.2, 7.0}) EXPECT_LE(0.5 - std::sqrt(0.25 + v * v), 0.0);
}

TEST(AxisDelta, Examples) {
  const auto a = axis_delta(0.0, -1.0);
  EXPECT_EQ(a.speed, -1.0);
  EXPECT_EQ(a.amplitude_rate, -0.5);
  EXPECT_EQ(a.carrier, Carrier::kU);
  const auto b = axis_delta(1.0, -2.0);
  EXPECT_EQ(b.speed, 0.0);
  EXPECT_EQ(b.amplitude_rate, -2.0);
  EXPECT_NEAR(axis_delta(0.3, -1e-9).amplitude_rate, 0.0, 1e-17);
  EXPECT_EQ(code_of([] { axis_delta(0.0, 0.5); }), Errc::kPrecondition);
}

TEST(SignChange, NoSecondWaveWhenRSitsOnTheDeltaLine) {
  const State l{0, 1};
  const double u_m = rarefaction_curve(1, l).u(0.0);
  const auto sol = solve_riemann_sign_change(l, {u_m, -0.7});
  ASSERT_EQ(sol.fan.waves.size(), 2u);
  EXPECT_EQ(sol.fan.waves[0].type, WaveType::kRarefaction);
  EXPECT_EQ(sol.fan.waves[1].type, WaveType::kDeltaShock);
  EXPECT_NEAR(sol.fan.waves[1].speed(), kUm - 1.0, 1e-14);
  EXPECT_NEAR(sol.fan.waves[1].amplitude_rate, -0.245, 1e-14);
  EXPECT_EQ(sol.middle.v_m, -0.7);
  EXPECT_EQ(code_of([&] { solve_riemann_sign_change(l, {0.3774, 0.5}); }), Errc::kPrecondition);
  expect_weak_solution(sol, 1e-6);
}

TEST(SignChange, RarefactionAndShockBranches) {
  const State l{0, 1};
  // u2 > u_m: RW2 with v_m in (v2, 0); u2 < u_m: SW2 with v_m < v2
  for (double u2 : {0.6, 1.5, 3.0, 0.2, -0.5, -2.0}) {
    for (double v2 : {-0.4, -1.0, -1.7}) {
      const State r{u2, v2};
      const auto sol = solve_riemann_sign_change(l, r);
      ASSERT_EQ(sol.fan.waves.size(), 3u);
      const auto& delta = sol.fan.waves[1];
      const auto& two = sol.fan.waves[2];
      EXPECT_NEAR(sol.middle.u_m, kUm, 1e-14);
      EXPECT_TRUE(admissible(1, delta.left, delta.right, delta.speed()));
      const State m{sol.middle.u_m, sol.middle.v_m};
      if (u2 > kUm) {
        EXPECT_EQ(two.type, WaveType::kRarefaction);
        EXPECT_GT(sol.middle.v_m, v2);
        EXPECT_LT(sol.middle.v_m, 0.0);
        EXPECT_LT(delta.speed(), lambda(2, m));
      } else {
        EXPECT_EQ(two.type, WaveType::kShock);
        EXPECT_LT(sol.middle.v_m, v2);
        EXPECT_TRUE(lax_shock(2, m, r, two.speed(), 1e-10));
      }
    }
  }
  expect_weak_solution(solve_riemann_sign_change(l, {1.5, -1.0}), 1e-6);
  expect_weak_solution(solve_riemann_sign_change(l, {-0.5, -1.0}), 1e-6);
}

TEST(DirectJoin, Examples) {
  const DirectJoin a = direct_delta_join({3, 1}, {0, -1});
  ASSERT_TRUE(a.spec.has_value());
  EXPECT_EQ(a.speed, 0.5);
  EXPECT_EQ(a.amplitude_rate, 3.0);
  EXPECT_TRUE(a.inequality_left);
  EXPECT_TRUE(a.inequality_right);
  const DirectJoin b = direct_delta_join({0, 1}, {0.1, -1});
  EXPECT_FALSE(b.spec.has_value());
  EXPECT_NEAR(b.speed, -0.95, 1e-15);
  EXPECT_FALSE(b.inequality_right);
  EXPECT_EQ(code_of([] { direct_delta_join({0, 1}, {2, 1}); }), Errc::kDegenerateJump);
}

TEST(DirectJoin, InequalitiesMatchLambdaBounds) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const State l{d(rng), d(rng)}, r{d(rng), d(rng)};
    const DirectJoin j = direct_delta_join(l, r);
    const double margin = std::min(std::abs(j.speed - lambda(1, l)), std::abs(j.speed - lambda(1, r)));
    if (margin < 1e-9) continue;
    EXPECT_EQ(j.lambda_bounds, j.inequality_left && j.inequality_right);
  }
}

TEST(Appendix, SymmetricDeltaIsWeakSolutionForBothSpeeds) {
  for (SpeedChoice sc : {SpeedChoice::kLambda1, SpeedChoice::kLambda2}) {
    const auto spec = symmetric_delta(0.4, 0.8, sc);
    const double s = std::sqrt(0.25 + 0.64);
    EXPECT_NEAR(spec.speed, sc == SpeedChoice::kLambda1 ? 0.4 - 0.5 - s : 0.4 - 0.5 + s, 1e-15);
    EXPECT_NEAR(spec.amplitude_rate, 2 * 0.8 * (0.4 - 1 - spec.speed), 1e-14);
    EXPECT_TRUE(admissible(sc == SpeedChoice::kLambda1 ? 1 : 2, spec.data.left, spec.data.right,
                           spec.speed));
    const auto sol = spec.solution();
    const auto rep = weakform::verify(brio_flux(), sol, weakform::standard_battery(sol), 1e-7);
    EXPECT_TRUE(rep.pass) << rep.max_residual;
  }
  EXPECT_EQ(symmetric_delta(0.4, 0.0, SpeedChoice::kLambda1).amplitude_rate, 0.0);
}

TEST(Appendix, RecoversConstructedMiddleStates) {
  const State l{0, 1};
  {
    const State m = rarefaction_curve(1, l).at(0.5);
    const State r = rarefaction_curve(2, {m.u, -0.5}).at(-1.2);
    const auto a = appendix_join(l, r, AppendixProcedure::kRw1DeltaRw2, SpeedChoice::kLambda1);
    EXPECT_NEAR(a.solution.middle.v_m, 0.5, 1e-10);
    EXPECT_EQ(a.valid_speed_choices.size(), 2u);
    ASSERT_EQ(a.solution.fan.waves.size(), 3u);
    EXPECT_EQ(a.solution.fan.waves[1].carrier, Carrier::kV);
    expect_weak_solution(a.solution, 1e-6);
    const auto b = appendix_join(l, r, AppendixProcedure::kRw1DeltaRw2, SpeedChoice::kLambda2);
    EXPECT_NEAR(b.solution.fan.waves[1].speed(), lambda(2, {m.u, 0.5}), 1e-10);
  }
  {
    const State m = shock_curve(1, l).at(1.5);
    const State r = rarefaction_curve(2, {m.u, -1.5}).at(-2.0);
    ASSERT_GT(r.u, l.u);
    const auto a = appendix_join(l, r, AppendixProcedure::kSw1DeltaRw2, SpeedChoice::kLambda2);
    EXPECT_NEAR(a.solution.middle.v_m, 1.5, 1e-10);
    EXPECT_EQ(a.solution.fan.waves[0].type, WaveType::kShock);
    expect_weak_solution(a.solution, 1e-6);
    EXPECT_EQ(code_of([&] {
                appendix_join(l, r, AppendixProcedure::kSw1DeltaRw2, SpeedChoice::kLambda1);
              }),
              Errc::kOrderingViolation);
  }
  {
    // a long 1-rarefaction is needed to keep u2 > u1 across the 2-shock
    const State l3{0, 3};
    const State m = rarefaction_curve(1, l3).at(0.5);
    const State r = shock_curve(2, {m.u, -0.5}).at(-0.2);
    ASSERT_GT(r.u, l3.u);
    const auto a = appendix_join(l3, r, AppendixProcedure::kRw1DeltaSw2, SpeedChoice::kLambda1);
    EXPECT_NEAR(a.solution.middle.v_m, 0.5, 1e-10);
    EXPECT_EQ(a.solution.fan.waves[2].type, WaveType::kShock);
    expect_weak_solution(a.solution, 1e-6);
  }
  EXPECT_EQ(code_of([&] {
              appendix_join({1, 1}, {0, -1}, AppendixProcedure::kRw1DeltaRw2, SpeedChoice::kLambda1);
            }),
            Errc::kRegimeError);
}

TEST(Classical, EmptyAndSingleWaveFans) {
  EXPECT_TRUE(solve_riemann_classical({0.2, 0.5}, {0.2, 0.5}).fan.empty());
  const State l{0.1, 0.8};
  const State r = rarefaction_curve(1, l).at(0.4);
  const auto sol = solve_riemann_classical(l, r);
  ASSERT_EQ(sol.fan.waves.size(), 1u);
  EXPECT_EQ(sol.fan.waves[0].type, WaveType::kRarefaction);
  EXPECT_EQ(code_of([] { solve_riemann_classical({0, 1}, {0, -1}); }), Errc::kPrecondition);
}

TEST(Classical, SmallDataFansSatisfyLax) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> base(0.5, 1.5), pert(-0.2, 0.2);
  for (int k = 0; k < 40; ++k) {
    const double sgn = k % 2 == 0 ? 1.0 : -1.0;
    const State l{pert(rng), sgn * base(rng)};
    const State r{l.u + pert(rng), l.v + pert(rng)};
    const auto sol = solve_riemann_classical(l, r);
    for (const auto& w : sol.fan.waves) {
      if (w.type == WaveType::kShock) {
        EXPECT_TRUE(lax_shock(w.family, w.left, w.right, w.speed(), 1e-10));
      } else {
        EXPECT_LE(lambda(w.family, w.left), lambda(w.family, w.right));
      }
    }
    if (k < 2) expect_weak_solution(sol, 1e-6);
  }
}

TEST(Enumerate, ExposesNonUniqueness) {
  const auto alts = enumerate_solutions({3, 1}, {0, -1});
  int admissible_count = 0;
  for (const auto& a : alts) {
    if (a.ok && (a.name == "sign_change" || a.name == "direct_delta")) ++admissible_count;
  }
  EXPECT_EQ(admissible_count, 2);
}

TEST(CurveTable, Columns) {
  const auto t = curve_table(rarefaction_curve(2, {0, -1}), -2.0, 0.0, 5);
  const std::string s = t.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "v,u,lambda_i,sigma");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 5);  // v = 0 excluded
}

}  // namespace
}  // namespace dshock::brio
