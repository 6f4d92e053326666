#ifndef DSHOCK_BRIO_HPP_
#define DSHOCK_BRIO_HPP_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dshock/csv.hpp"
#include "dshock/flux.hpp"
#include "dshock/gendelta.hpp"
#include "dshock/singular_solution.hpp"
#include "dshock/state.hpp"
#include "dshock/wave_fan.hpp"

namespace dshock::brio {

// lambda_{1,2}(u, v) = u - 1/2 -+ sqrt(1/4 + v^2). family must be 1 or 2.
double lambda(int family, const State& s);
Direction eigenvector(int family, const State& s);

enum class CurveKind { kRarefaction, kShock };

std::string to_string(CurveKind k);

// Wave curve through `anchor`, parametrized by v.
//
// Rarefactions use the closed forms
//   family 1: u = -(w - log(1 + w))/2 + C1,
//   family 2: u =  (w + log(w - 1))/2 + C2,     w = sqrt(4 v^2 + 1),
// with C fitted to the anchor. Family 2 is only defined for v of the anchor's
// strict sign.
//
// Shocks are branches of the Hugoniot locus. u(v) is computed by root finding
// on [f](v - v1) = [g](u - u1); u_closed_form(v) evaluates
//   u - u1 = (v - v1)/(v + v1) (1 -+ sqrt((v + v1)^2 + 1))
// for comparison. Both are undefined at v = -v1.
class WaveCurve {
 public:
  int family() const { return family_; }
  CurveKind kind() const { return kind_; }
  const State& anchor() const { return anchor_; }
  // Open domain (v_min, v_max); shock curves additionally exclude -anchor.v.
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  // C1 / C2 for rarefactions, NaN for shocks.
  double constant() const { return constant_; }

  bool contains(double v) const;
  // Throws kDomainError outside the domain.
  double u(double v) const;
  double u_closed_form(double v) const;
  State at(double v) const { return {u(v), v}; }
  // Characteristic speed for rarefactions, shock speed for shocks.
  double speed(double v) const;

  friend WaveCurve rarefaction_curve(int family, const State& anchor);
  friend WaveCurve shock_curve(int branch, const State& anchor);

 private:
  WaveCurve() = default;
  int family_ = 1;
  CurveKind kind_ = CurveKind::kRarefaction;
  State anchor_;
  double v_min_ = -std::numeric_limits<double>::infinity();
  double v_max_ = std::numeric_limits<double>::infinity();
  double constant_ = std::numeric_limits<double>::quiet_NaN();
};

// Family 2 requires anchor.v != 0 (kDomainError).
WaveCurve rarefaction_curve(int family, const State& anchor);
WaveCurve shock_curve(int branch, const State& anchor);

struct ShockCurveReport {
  int samples = 0;
  double max_rh_residual = 0.0;      // numeric locus, common speed
  double max_closed_form_gap = 0.0;  // |u_closed_form - u|
  double max_closed_form_rh = 0.0;   // RH residual of the closed form
};

// Samples n points of [v_lo, v_hi] inside the curve's domain.
ShockCurveReport check_shock_curve(const WaveCurve& curve, double v_lo, double v_hi, int n);

// v, u, lambda_i, sigma on n uniform samples of [v_lo, v_hi] inside the
// domain; sigma equals lambda_i on rarefaction curves.
CsvTable curve_table(const WaveCurve& curve, double v_lo, double v_hi, int n);

// lambda_i(r) <= c <= lambda_i(l).
bool admissible(int family, const State& l, const State& r, double c);
// lambda_i(r) < c < lambda_i(l).
bool admissible_strict(int family, const State& l, const State& r, double c);
// Both families admissible.
bool overcompressive(const State& l, const State& r, double c);
// Lax entropy conditions for a classical i-shock, with slack tol.
bool lax_shock(int family, const State& l, const State& r, double sigma, double tol = 1e-12);

// Carrier-u delta shock between (u~, 0) and (u~, v2), v2 < 0: c = u~ - 1,
// rate -v2^2/2. Throws kPrecondition for v2 >= 0.
gendelta::DeltaShockSpec axis_delta(double u_tilde, double v2);

enum class SpeedChoice { kLambda1, kLambda2 };
std::string to_string(SpeedChoice s);

// Carrier-v delta shock between (u, vbar) and (u, -vbar) moving with
// lambda_i(u, vbar); rate 2 vbar (u - 1 - c).
gendelta::DeltaShockSpec symmetric_delta(double u, double vbar, SpeedChoice speed);

struct MiddleState {
  double u_m = 0.0;
  double v_m = 0.0;
};

struct CompositeSolution {
  std::string construction;
  WaveFan fan;
  MiddleState middle;

  SingularSolution singular_solution(double origin = 0.0) const {
    return SingularSolution::from_fan(fan, origin);
  }
};

// RW1 from L to (u_m, 0), carrier-u delta to (u_m, v_m), then RW2 or SW2 to R.
// Requires v2 < 0 < v1 (kPrecondition). v_m lies in (v2, 0) when u_m < u2
// and below v2 when u_m > u2.
CompositeSolution solve_riemann_sign_change(const State& l, const State& r);

struct DirectJoin {
  double speed = 0.0;
  double amplitude_rate = 0.0;
  bool lambda_bounds = false;    // admissible(1, L, R, c)
  bool inequality_left = false;  // v1 (u2 - u1)/(v2 - v1) >= 1/2 - sqrt(1/4 + v2^2)
  bool inequality_right = false; // v2 (u2 - u1)/(v2 - v1) <= 1/2 - sqrt(1/4 + v1^2)
  std::optional<gendelta::DeltaShockSpec> spec;  // present iff lambda_bounds
};

// Carrier-u delta shock joining L and R when it is 1-admissible. Throws
// kDegenerateJump for v1 == v2.
DirectJoin direct_delta_join(const State& l, const State& r);

enum class AppendixProcedure { kRw1DeltaRw2, kSw1DeltaRw2, kRw1DeltaSw2 };
std::string to_string(AppendixProcedure p);

struct AppendixSolution {
  CompositeSolution solution;
  // Speed choices for which the same middle state yields an ordered fan.
  std::vector<SpeedChoice> valid_speed_choices;
};

// 1-wave from L to M = (u_m, v_m), carrier-v delta from M to (u_m, -v_m) with
// speed lambda_i(M), 2-wave to R. Requires u2 > u1 (kRegimeError) and v1 != 0.
// Throws kNoBracket when the chosen curves do not meet and kOrderingViolation
// when the speed choice breaks the fan order.
AppendixSolution appendix_join(const State& l, const State& r, AppendixProcedure procedure,
                               SpeedChoice speed);

// Lax solution for v1, v2 of the same strict sign. The 1-curve through L is
// RW1 for |v| <= |v1| and SW1 beyond; the backward 2-curve through R is RW2
// for |v| <= |v2| and SW2 beyond. Throws kPrecondition on mixed signs and
// kNoIntersection when no middle state with admissible waves is found.
CompositeSolution solve_riemann_classical(const State& l, const State& r);

struct Alternative {
  std::string name;
  bool ok = false;
  std::string message;  // failure reason when !ok
  std::optional<CompositeSolution> solution;
};

// Every construction applicable to (L, R): composite sign-change solver,
// direct delta join, classical solver and the appendix procedures with both
// speed choices.
std::vector<Alternative> enumerate_solutions(const State& l, const State& r);

}  // namespace dshock::brio

#endif  // DSHOCK_BRIO_HPP_
