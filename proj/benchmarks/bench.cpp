#include <benchmark/benchmark.h>

#include "dshock/asymptotics.hpp"
#include "dshock/brio.hpp"
#include "dshock/gendelta.hpp"
#include "dshock/viscous.hpp"
#include "dshock/weakform.hpp"

namespace {

using namespace dshock;

// One residual pairing of the variant-A family; cost grows with 1/eps only
// through the outer constant regions, which are exact.
void BM_ResidualPairing(benchmark::State& state) {
  const RiemannData data({1.0, 1.0}, {0.0, 0.0});
  const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const auto fam = asymptotics::build_family_a(data, eps);
  const SpatialTestFunction phi(0.5, 2.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asymptotics::residual_pairings(fam, phi, 0.5));
  }
}
BENCHMARK(BM_ResidualPairing)->Arg(4)->Arg(8)->Arg(12);

void BM_VerifyDeltaShock(benchmark::State& state) {
  const auto sol = gendelta::delta_shock_carrier_u(brio_flux(), RiemannData({3.0, 1.0}, {0.0, -1.0})).solution();
  const auto battery = weakform::standard_battery(sol);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weakform::verify(brio_flux(), sol, battery, 1e-7));
  }
}
BENCHMARK(BM_VerifyDeltaShock)->Unit(benchmark::kMillisecond);

// Single member of the battery for a composite fan with a rarefaction.
void BM_ResidualComposite(benchmark::State& state) {
  const auto sol = brio::solve_riemann_sign_change({0.0, 1.0}, {0.3774, -0.7}).singular_solution();
  const TestFunction phi(0.0, 1.0, 2.0, 2.0);
  weakform::QuadratureOptions opt;
  opt.estimate_error = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(weakform::residual(brio_flux(), sol, phi, opt));
  }
}
BENCHMARK(BM_ResidualComposite)->Unit(benchmark::kMillisecond);

// Whole-run cost divided by the number of SSP-RK2 steps.
void BM_ViscousStep(benchmark::State& state) {
  viscous::ViscousConfig c;
  c.data = RiemannData({0.0, 0.0}, {0.0, -1.0});
  c.half_width = 6.0;
  c.cells = static_cast<int>(state.range(0));
  c.final_time = 0.1;
  c.snapshots = 1;
  long steps = 0;
  for (auto _ : state) {
    const auto r = viscous::run(brio_flux(), c);
    steps += r.steps;
  }
  state.counters["steps"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ViscousStep)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_ShockCurve(benchmark::State& state) {
  const auto curve = brio::shock_curve(1, {0.0, 1.0});
  double v = -3.0;
  for (auto _ : state) {
    v = v > 3.0 ? -3.0 : v + 0.01;
    if (v == -1.0) continue;
    benchmark::DoNotOptimize(curve.u(v));
  }
}
BENCHMARK(BM_ShockCurve);

void BM_RarefactionProfile(benchmark::State& state) {
  const auto sol = brio::solve_riemann_sign_change({0.0, 1.0}, {0.3774, -0.7});
  const auto& w = sol.fan.waves.front();
  double xi = w.speed_lo;
  const double step = (w.speed_hi - w.speed_lo) / 997.0;
  for (auto _ : state) {
    xi = xi + step > w.speed_hi ? w.speed_lo : xi + step;
    benchmark::DoNotOptimize(w.state_at_speed(xi));
  }
}
BENCHMARK(BM_RarefactionProfile);

}  // namespace

BENCHMARK_MAIN();
