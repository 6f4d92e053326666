#include "dshock/brio.hpp"

#include <cmath>
#include <sstream>

#include "dshock/error.hpp"
#include "dshock/roots.hpp"

namespace dshock::brio {

namespace {

constexpr double kSnap = 1e-12;

const FluxPair& flux() {
  static const FluxPair f = brio_flux();
  return f;
}

void require_family(int family, const char* op) {
  if (family != 1 && family != 2) {
    throw Error(Errc::kInvalidInput, std::string(op) + ": family must be 1 or 2, got " +
                                         std::to_string(family));
  }
}

double half_gap(double v) { return std::sqrt(0.25 + v * v); }

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

double w_of(double v) { return std::sqrt(4.0 * v * v + 1.0); }

// log(w - 1) without cancellation for small v.
double log_w_minus_one(double v) {
  const double w = w_of(v);
  return std::log(4.0 * v * v / (w + 1.0));
}

double rw1_shape(double v) {
  const double w = w_of(v);
  return -0.5 * (w - std::log1p(w));
}

double rw2_shape(double v) { return 0.5 * (w_of(v) + log_w_minus_one(v)); }

double hugoniot_u(int branch, const State& a, double v) {
  const double dv = v - a.v;
  if (dv == 0.0) return a.u;
  const double s = v + a.v;
  if (s == 0.0) {
    throw Error(Errc::kDomainError, "shock curve undefined at v = -v_anchor = " + std::to_string(v));
  }
  // ([f] - k [g]) / (v - v1) with u - u1 = k (v - v1); the jumps are expanded
  // so that the division is exact and small jumps keep full precision
  auto h = [&](double k) {
    const double df = 0.5 * (k * (2.0 * a.u + k * dv) + s);
    const double dg = (a.u - 1.0) + v * k;
    return df - k * dg;
  };
  // one root on each side of k = 0
  const double dir = (branch == 1 ? -1.0 : 1.0) * sign(s);
  const double h0 = h(0.0);
  double step = 1.0;
  double x = dir * step;
  for (int k = 0; k < 2000 && std::signbit(h(x)) == std::signbit(h0); ++k) {
    step *= 2.0;
    x = dir * step;
    if (!std::isfinite(x)) break;
  }
  if (!std::isfinite(x) || std::signbit(h(x)) == std::signbit(h0)) {
    throw Error(Errc::kNoBracket, "Hugoniot locus: no root found at v = " + std::to_string(v));
  }
  RootOptions opt;
  opt.tol = 0.0;
  opt.max_iter = 400;
  return a.u + refine_root(h, 0.0, x, opt) * dv;
}

bool same_state(const State& a, const State& b) {
  return std::abs(a.u - b.u) <= kSnap * std::max(1.0, std::abs(a.u)) &&
         std::abs(a.v - b.v) <= kSnap * std::max(1.0, std::abs(a.v));
}

double shock_speed(const State& l, const State& r) {
  const double du = r.u - l.u;
  const double dv = r.v - l.v;
  const auto [fl, gl] = flux()(l);
  const auto [fr, gr] = flux()(r);
  return std::abs(du) >= std::abs(dv) ? (fr - fl) / du : (gr - gl) / dv;
}

ElementaryWave shock_wave(int family, const State& l, const State& r) {
  ElementaryWave w;
  w.type = WaveType::kShock;
  w.family = family;
  w.left = l;
  w.right = r;
  w.speed_lo = w.speed_hi = shock_speed(l, r);
  return w;
}

// Rarefaction along `curve` from l to r; the profile inverts lambda_i on the
// v-interval between the end states.
ElementaryWave rarefaction_wave(const WaveCurve& curve, const State& l, const State& r) {
  const int family = curve.family();
  ElementaryWave w;
  w.type = WaveType::kRarefaction;
  w.family = family;
  w.left = l;
  w.right = r;
  w.speed_lo = lambda(family, l);
  w.speed_hi = lambda(family, r);
  const double va = l.v, vb = r.v;
  const double sa = w.speed_lo, sb = w.speed_hi;
  // With w = sqrt(4 v^2 + 1), lambda_i along the curve is strictly monotone in
  // w (dlambda/dw = -1 + 1/(2(1+w)) resp. 1 + 1/(2(w-1))), and |v| is
  // monotone across the fan, so a safeguarded Newton iteration in w inverts it.
  const double sgn = (va != 0.0 ? va : vb) < 0.0 ? -1.0 : 1.0;
  const double wa = std::sqrt(4.0 * va * va + 1.0), wb = std::sqrt(4.0 * vb * vb + 1.0);
  w.state_at_speed = [curve, family, sgn, wa, wb, sa, sb, l, r](double xi) -> State {
    if (xi <= sa) return l;
    if (xi >= sb) return r;
    auto v_of = [&](double w) { return sgn * 0.5 * std::sqrt((w - 1.0) * (w + 1.0)); };
    auto g = [&](double w) {
      const double v = v_of(w);
      return lambda(family, {curve.u(v), v}) - xi;
    };
    auto dg = [&](double w) { return family == 1 ? -1.0 + 0.5 / (1.0 + w) : 1.0 + 0.5 / (w - 1.0); };
    double lo = std::min(wa, wb), hi = std::max(wa, wb);
    const bool rising = g(hi) > g(lo);
    double w = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      const double gw = g(w);
      if (gw == 0.0) break;
      if ((gw > 0.0) == rising) {
        hi = w;
      } else {
        lo = w;
      }
      double next = w - gw / dg(w);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - w) <= 1e-15 * w || hi - lo <= 1e-15 * w;
      w = next;
      if (done) break;
    }
    const double v = v_of(w);
    return {curve.u(v), v};
  };
  return w;
}

ElementaryWave delta_wave(const gendelta::DeltaShockSpec& spec) {
  ElementaryWave w;
  w.type = WaveType::kDeltaShock;
  w.family = 0;
  w.left = spec.data.left;
  w.right = spec.data.right;
  w.speed_lo = w.speed_hi = spec.speed;
  w.carrier = spec.carrier;
  w.amplitude_rate = spec.amplitude_rate;
  return w;
}

std::string describe(const State& s) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << s.u << ", " << s.v << ")";
  return os.str();
}

// Grows `hi` geometrically from `lo` until f changes sign relative to f(lo).
template <typename F>
double expand_bracket(F&& f, double lo, double step, const char* what) {
  const bool s0 = std::signbit(f(lo));
  double hi = lo + step;
  for (int k = 0; k < 200; ++k) {
    if (std::signbit(f(hi)) != s0) return hi;
    step *= 2.0;
    hi = lo + step;
  }
  throw Error(Errc::kNoBracket, std::string(what) + ": no sign change found");
}

}  // namespace

double lambda(int family, const State& s) {
  require_family(family, "lambda");
  const double root = half_gap(s.v);
  return family == 1 ? s.u - 0.5 - root : s.u - 0.5 + root;
}

Direction eigenvector(int family, const State& s) {
  require_family(family, "eigenvector");
  const double root = half_gap(s.v);
  // forms chosen so that neither vanishes at v = 0
  Direction r = family == 1 ? Direction{s.v, -0.5 - root} : Direction{0.5 + root, s.v};
  const double n = std::hypot(r[0], r[1]);
  return {r[0] / n, r[1] / n};
}

std::string to_string(CurveKind k) { return k == CurveKind::kShock ? "shock" : "rarefaction"; }

bool WaveCurve::contains(double v) const {
  if (!std::isfinite(v)) return false;
  if (kind_ == CurveKind::kShock) return v == anchor_.v || v + anchor_.v != 0.0;
  return v > v_min_ && v < v_max_;
}

double WaveCurve::u(double v) const {
  if (!contains(v)) {
    throw Error(Errc::kDomainError, to_string(kind_) + " curve " + std::to_string(family_) +
                                        " through " + describe(anchor_) +
                                        " is undefined at v = " + std::to_string(v));
  }
  if (kind_ == CurveKind::kShock) return hugoniot_u(family_, anchor_, v);
  return constant_ + (family_ == 1 ? rw1_shape(v) : rw2_shape(v));
}

double WaveCurve::u_closed_form(double v) const {
  if (kind_ == CurveKind::kRarefaction) return u(v);
  if (!contains(v)) {
    throw Error(Errc::kDomainError, "shock curve undefined at v = " + std::to_string(v));
  }
  const double v1 = anchor_.v;
  if (v == v1) return anchor_.u;
  const double s = v + v1;
  const double root = std::sqrt(s * s + 1.0);
  return anchor_.u + (v - v1) / s * (family_ == 1 ? 1.0 - root : 1.0 + root);
}

double WaveCurve::speed(double v) const {
  if (kind_ == CurveKind::kRarefaction) return lambda(family_, at(v));
  if (v == anchor_.v) return lambda(family_, anchor_);
  return shock_speed(anchor_, at(v));
}

WaveCurve rarefaction_curve(int family, const State& anchor) {
  require_family(family, "rarefaction_curve");
  if (!anchor.finite()) throw Error(Errc::kInvalidInput, "rarefaction_curve: non-finite anchor");
  WaveCurve c;
  c.family_ = family;
  c.kind_ = CurveKind::kRarefaction;
  c.anchor_ = anchor;
  if (family == 1) {
    c.constant_ = anchor.u - rw1_shape(anchor.v);
  } else {
    if (anchor.v == 0.0) {
      throw Error(Errc::kDomainError, "2-rarefaction curve needs an anchor with v != 0");
    }
    c.constant_ = anchor.u - rw2_shape(anchor.v);
    if (anchor.v > 0.0) {
      c.v_min_ = 0.0;
    } else {
      c.v_max_ = 0.0;
    }
  }
  return c;
}

WaveCurve shock_curve(int branch, const State& anchor) {
  require_family(branch, "shock_curve");
  if (!anchor.finite()) throw Error(Errc::kInvalidInput, "shock_curve: non-finite anchor");
  WaveCurve c;
  c.family_ = branch;
  c.kind_ = CurveKind::kShock;
  c.anchor_ = anchor;
  return c;
}

ShockCurveReport check_shock_curve(const WaveCurve& curve, double v_lo, double v_hi, int n) {
  if (curve.kind() != CurveKind::kShock) {
    throw Error(Errc::kPrecondition, "check_shock_curve: not a shock curve");
  }
  ShockCurveReport rep;
  const State a = curve.anchor();
  for (int k = 0; k < n; ++k) {
    const double v = n == 1 ? v_lo : v_lo + (v_hi - v_lo) * k / (n - 1);
    if (!curve.contains(v) || v == a.v) continue;
    const State s = curve.at(v);
    const double sigma = curve.speed(v);
    rep.max_rh_residual =
        std::max(rep.max_rh_residual, rankine_hugoniot_residual(flux(), a, s, sigma));
    const State cf{curve.u_closed_form(v), v};
    rep.max_closed_form_gap = std::max(rep.max_closed_form_gap, std::abs(cf.u - s.u));
    rep.max_closed_form_rh = std::max(rep.max_closed_form_rh,
                                      rankine_hugoniot_residual(flux(), a, cf, shock_speed(a, cf)));
    ++rep.samples;
  }
  return rep;
}

CsvTable curve_table(const WaveCurve& curve, double v_lo, double v_hi, int n) {
  CsvTable t({"v", "u", "lambda_i", "sigma"});
  for (int k = 0; k < n; ++k) {
    const double v = n == 1 ? v_lo : v_lo + (v_hi - v_lo) * k / (n - 1);
    if (!curve.contains(v)) continue;
    const State s = curve.at(v);
    t.add_row({v, s.u, lambda(curve.family(), s), curve.speed(v)});
  }
  return t;
}

bool admissible(int family, const State& l, const State& r, double c) {
  return lambda(family, r) <= c && c <= lambda(family, l);
}

bool admissible_strict(int family, const State& l, const State& r, double c) {
  return lambda(family, r) < c && c < lambda(family, l);
}

bool overcompressive(const State& l, const State& r, double c) {
  return admissible(1, l, r, c) && admissible(2, l, r, c);
}

bool lax_shock(int family, const State& l, const State& r, double sigma, double tol) {
  require_family(family, "lax_shock");
  const bool own = lambda(family, r) < sigma + tol && sigma < lambda(family, l) + tol;
  if (family == 1) return own && sigma < lambda(2, r) + tol;
  return own && sigma > lambda(1, l) - tol;
}

gendelta::DeltaShockSpec axis_delta(double u_tilde, double v2) {
  if (!(v2 < 0.0) || !std::isfinite(u_tilde)) {
    throw Error(Errc::kPrecondition, "axis_delta: needs v2 < 0, got " + std::to_string(v2));
  }
  auto spec = gendelta::delta_shock_carrier_u(flux(), RiemannData({u_tilde, 0.0}, {u_tilde, v2}));
  const double slack = 1e-12 * std::max(1.0, std::abs(u_tilde));
  if (!(lambda(1, spec.data.right) <= spec.speed + slack &&
        spec.speed <= lambda(1, spec.data.left) + slack)) {
    throw Error(Errc::kPrecondition, "axis_delta: resulting shock is not 1-admissible");
  }
  return spec;
}

std::string to_string(SpeedChoice s) { return s == SpeedChoice::kLambda1 ? "lambda1" : "lambda2"; }

gendelta::DeltaShockSpec symmetric_delta(double u, double vbar, SpeedChoice speed) {
  const State m{u, vbar};
  const double c = lambda(speed == SpeedChoice::kLambda1 ? 1 : 2, m);
  return gendelta::delta_shock_with_speed(flux(), RiemannData(m, {u, -vbar}), Carrier::kV, c);
}

CompositeSolution solve_riemann_sign_change(const State& l, const State& r) {
  if (!(r.v < 0.0 && 0.0 < l.v)) {
    throw Error(Errc::kPrecondition, "solve_riemann_sign_change: needs v2 < 0 < v1, got L = " +
                                         describe(l) + ", R = " + describe(r));
  }
  const WaveCurve rw1 = rarefaction_curve(1, l);
  const double u_m = rw1.u(0.0);
  double v_m = r.v;
  bool two_wave_is_shock = false;
  if (std::abs(u_m - r.u) <= kSnap * std::max(1.0, std::abs(r.u))) {
    v_m = r.v;
  } else if (u_m < r.u) {
    // RW2 through R on (v2, 0); u -> -inf as v -> 0-
    const WaveCurve rw2 = rarefaction_curve(2, r);
    auto f = [&](double v) { return rw2.u(v) - u_m; };
    double hi = 0.5 * r.v;
    for (int k = 0; k < 1000 && f(hi) > 0.0; ++k) hi *= 0.5;
    if (!(f(hi) < 0.0)) {
      throw Error(Errc::kNoBracket, "sign-change solver: no middle state on RW2 through " +
                                        describe(r));
    }
    RootOptions opt;
    opt.tol = 0.0;
    v_m = refine_root(f, r.v, hi, opt);
  } else {
    // SW2 through R below v2
    const WaveCurve sw2 = shock_curve(2, r);
    auto f = [&](double v) { return sw2.u(v) - u_m; };
    const double lo = expand_bracket([&](double d) { return f(r.v - d); }, 0.0,
                                     std::max(1.0, std::abs(r.v)), "sign-change solver (SW2)");
    RootOptions opt;
    opt.tol = 0.0;
    v_m = refine_root(f, r.v - lo, r.v, opt);
    two_wave_is_shock = true;
  }

  const State a{u_m, 0.0};
  const State m{u_m, v_m};
  CompositeSolution out;
  out.construction = "sign_change";
  out.middle = {u_m, v_m};
  out.fan.left = l;
  out.fan.right = r;
  out.fan.waves.push_back(rarefaction_wave(rw1, l, a));
  const auto delta = axis_delta(u_m, v_m);
  out.fan.waves.push_back(delta_wave(delta));
  if (v_m != r.v) {
    if (two_wave_is_shock) {
      out.fan.waves.push_back(shock_wave(2, m, r));
    } else {
      out.fan.waves.push_back(rarefaction_wave(rarefaction_curve(2, r), m, r));
    }
  } else {
    // snap onto R so that adjacency is exact
    out.fan.waves.back().right = r;
  }
  check_fan(out.fan, flux());
  return out;
}

DirectJoin direct_delta_join(const State& l, const State& r) {
  const auto spec = gendelta::delta_shock_carrier_u(flux(), RiemannData(l, r));
  DirectJoin j;
  j.speed = spec.speed;
  j.amplitude_rate = spec.amplitude_rate;
  j.lambda_bounds = admissible(1, l, r, spec.speed);
  const double ratio = (r.u - l.u) / (r.v - l.v);
  j.inequality_left = l.v * ratio >= 0.5 - half_gap(r.v);
  j.inequality_right = r.v * ratio <= 0.5 - half_gap(l.v);
  if (j.lambda_bounds) j.spec = spec;
  return j;
}

std::string to_string(AppendixProcedure p) {
  switch (p) {
    case AppendixProcedure::kRw1DeltaRw2: return "RW1-delta-RW2";
    case AppendixProcedure::kSw1DeltaRw2: return "SW1-delta-RW2";
    case AppendixProcedure::kRw1DeltaSw2: return "RW1-delta-SW2";
  }
  return "?";
}

namespace {

struct AppendixGeometry {
  std::optional<WaveCurve> c1;  // through L
  std::optional<WaveCurve> c2;  // through R
  bool shock1 = false;
  bool shock2 = false;
  double t_lo = 0.0;  // |v_m| range
  double t_hi = 0.0;
};

CompositeSolution appendix_fan(const State& l, const State& r, const AppendixGeometry& g,
                               double v_m, SpeedChoice speed, AppendixProcedure p) {
  const double u_m = g.c1->u(v_m);
  const State m{u_m, v_m};
  const State mp{u_m, -v_m};
  CompositeSolution out;
  out.construction = "appendix " + to_string(p) + " " + to_string(speed);
  out.middle = {u_m, v_m};
  out.fan.left = l;
  out.fan.right = r;
  if (!same_state(l, m)) {
    out.fan.waves.push_back(g.shock1 ? shock_wave(1, l, m) : rarefaction_wave(*g.c1, l, m));
  }
  const State delta_left = out.fan.waves.empty() ? l : m;
  if (v_m != 0.0) {
    auto spec = symmetric_delta(u_m, v_m, speed);
    spec.data = RiemannData(delta_left, mp);
    out.fan.waves.push_back(delta_wave(spec));
  }
  const State two_left = out.fan.waves.empty() ? l : out.fan.waves.back().right;
  if (!same_state(mp, r)) {
    out.fan.waves.push_back(g.shock2 ? shock_wave(2, two_left, r)
                                     : rarefaction_wave(*g.c2, two_left, r));
  } else if (!out.fan.waves.empty()) {
    out.fan.waves.back().right = r;
  }
  return out;
}

}  // namespace

AppendixSolution appendix_join(const State& l, const State& r, AppendixProcedure procedure,
                               SpeedChoice speed) {
  if (!(r.u > l.u)) {
    throw Error(Errc::kRegimeError, "appendix_join: requires u2 > u1 (u1 = " +
                                        std::to_string(l.u) + ", u2 = " + std::to_string(r.u) +
                                        "); no construction is available otherwise");
  }
  if (l.v == 0.0) throw Error(Errc::kPrecondition, "appendix_join: needs v1 != 0");
  const double s = sign(l.v);
  AppendixGeometry g;
  g.shock1 = procedure == AppendixProcedure::kSw1DeltaRw2;
  g.shock2 = procedure == AppendixProcedure::kRw1DeltaSw2;
  g.c1 = g.shock1 ? shock_curve(1, l) : rarefaction_curve(1, l);
  const double a1 = std::abs(l.v), a2 = std::abs(r.v);
  // |v_m| ranges per wave kind
  double lo1 = g.shock1 ? a1 : 0.0, hi1 = g.shock1 ? std::numeric_limits<double>::infinity() : a1;
  double lo2 = 0.0, hi2 = std::numeric_limits<double>::infinity();
  if (g.shock2) {
    g.c2 = shock_curve(2, r);
    lo2 = r.v * s < 0.0 ? a2 : 0.0;
  } else {
    if (!(r.v * s < 0.0)) {
      throw Error(Errc::kNoBracket, "appendix_join: RW2 into R needs v2 of opposite sign to v1");
    }
    g.c2 = rarefaction_curve(2, r);
    hi2 = a2;
  }
  g.t_lo = std::max(lo1, lo2);
  g.t_hi = std::min(hi1, hi2);
  if (!(g.t_hi >= g.t_lo)) {
    throw Error(Errc::kNoBracket, "appendix_join: empty middle-state range for " +
                                      to_string(procedure));
  }
  // u on the 1-curve at v_m minus u on the 2-curve at -v_m
  auto f = [&](double t) {
    const double v = s * t;
    if (!g.c2->contains(-v)) return std::numeric_limits<double>::quiet_NaN();
    return g.c1->u(v) - g.c2->u(-v);
  };
  double hi = g.t_hi;
  double lo = g.t_lo;
  if (!std::isfinite(hi)) {
    hi = std::max({2.0 * a1, 2.0 * a2, 1.0, 2.0 * lo});
    const double ref = lo == 0.0 ? f(1e-9 * hi) : f(lo);
    for (int k = 0; k < 60 && std::signbit(f(hi)) == std::signbit(ref); ++k) hi *= 2.0;
  }
  if (lo == 0.0) lo = 1e-9 * std::max(1.0, hi);  // RW2 is singular at 0
  RootOptions opt;
  opt.tol = 0.0;
  const auto brackets = scan_brackets(f, lo, hi, opt.scan_points);
  if (brackets.empty()) {
    throw Error(Errc::kNoBracket, "appendix_join: curves of " + to_string(procedure) +
                                      " do not meet for |v_m| in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
  }
  const double t_m = refine_root(f, brackets.front().first, brackets.front().second, opt);
  const double v_m = s * t_m;

  AppendixSolution out;
  for (SpeedChoice sc : {SpeedChoice::kLambda1, SpeedChoice::kLambda2}) {
    try {
      check_fan(appendix_fan(l, r, g, v_m, sc, procedure).fan, flux());
      out.valid_speed_choices.push_back(sc);
    } catch (const Error&) {
    }
  }
  out.solution = appendix_fan(l, r, g, v_m, speed, procedure);
  check_fan(out.solution.fan, flux());
  for (const ElementaryWave& w : out.solution.fan.waves) {
    if (w.type == WaveType::kShock && !lax_shock(w.family, w.left, w.right, w.speed_lo, 1e-10)) {
      throw Error(Errc::kOrderingViolation, "appendix_join: " + std::to_string(w.family) +
                                                "-shock violates the Lax conditions");
    }
    if (w.type == WaveType::kRarefaction && w.speed_lo > w.speed_hi) {
      throw Error(Errc::kOrderingViolation, "appendix_join: rarefaction with decreasing speeds");
    }
  }
  return out;
}

CompositeSolution solve_riemann_classical(const State& l, const State& r) {
  if (!(l.v * r.v > 0.0)) {
    throw Error(Errc::kPrecondition, "solve_riemann_classical: v1 and v2 must have the same "
                                     "strict sign, got L = " + describe(l) + ", R = " + describe(r));
  }
  CompositeSolution out;
  out.construction = "classical";
  out.fan.left = l;
  out.fan.right = r;
  if (l == r) {
    out.middle = {l.u, l.v};
    return out;
  }
  const double s = sign(l.v);
  const double a1 = std::abs(l.v), a2 = std::abs(r.v);
  const WaveCurve rw1 = rarefaction_curve(1, l);
  const WaveCurve sw1 = shock_curve(1, l);
  const WaveCurve rw2 = rarefaction_curve(2, r);
  const WaveCurve sw2 = shock_curve(2, r);
  auto w1 = [&](double t) { return t <= a1 ? rw1.u(s * t) : sw1.u(s * t); };
  auto w2 = [&](double t) { return t <= a2 ? rw2.u(s * t) : sw2.u(s * t); };
  auto f = [&](double t) { return w1(t) - w2(t); };

  std::vector<double> candidates;
  for (double t : {a1, a2}) {
    if (std::abs(f(t)) <= kSnap * std::max(1.0, std::abs(w1(t)))) candidates.push_back(t);
  }
  if (candidates.empty()) {
    double hi = std::max({2.0 * a1, 2.0 * a2, 1.0});
    for (int k = 0; k < 60 && f(hi) > 0.0; ++k) hi *= 2.0;
    const double lo = 1e-9 * std::min(a1, a2);
    RootOptions opt;
    opt.tol = 0.0;
    for (const auto& [a, b] : scan_brackets(f, lo, hi, opt.scan_points)) {
      candidates.push_back(refine_root(f, a, b, opt));
    }
  }
  std::string last_reason = "no intersection of the 1-curve through L and the 2-curve through R";
  for (double t : candidates) {
    const State m{w1(t), s * t};
    WaveFan fan;
    fan.left = l;
    fan.right = r;
    bool ok = true;
    State cur = l;
    if (!same_state(l, m)) {
      if (t <= a1) {
        fan.waves.push_back(rarefaction_wave(rw1, l, m));
      } else {
        fan.waves.push_back(shock_wave(1, l, m));
        ok = ok && lax_shock(1, l, m, fan.waves.back().speed_lo, 1e-10);
      }
      cur = m;
    }
    if (!same_state(m, r)) {
      if (t <= a2) {
        fan.waves.push_back(rarefaction_wave(rw2, cur, r));
      } else {
        fan.waves.push_back(shock_wave(2, cur, r));
        ok = ok && lax_shock(2, cur, r, fan.waves.back().speed_lo, 1e-10);
      }
    } else if (!fan.waves.empty()) {
      fan.waves.back().right = r;
    }
    if (!ok) {
      last_reason = "middle state " + describe(m) + " violates the Lax conditions";
      continue;
    }
    try {
      check_fan(fan, flux());
    } catch (const Error& e) {
      last_reason = e.what();
      continue;
    }
    out.fan = std::move(fan);
    out.middle = {m.u, m.v};
    return out;
  }
  throw Error(Errc::kNoIntersection, "solve_riemann_classical: " + last_reason);
}

std::vector<Alternative> enumerate_solutions(const State& l, const State& r) {
  std::vector<Alternative> out;
  auto attempt = [&](const std::string& name, auto&& build) {
    Alternative a;
    a.name = name;
    try {
      a.solution = build();
      a.ok = true;
    } catch (const Error& e) {
      a.message = e.what();
    }
    out.push_back(std::move(a));
  };
  if (r.v < 0.0 && 0.0 < l.v) {
    attempt("sign_change", [&] { return solve_riemann_sign_change(l, r); });
  }
  if (l.v != r.v) {
    attempt("direct_delta", [&]() -> CompositeSolution {
      const DirectJoin j = direct_delta_join(l, r);
      if (!j.spec) {
        std::ostringstream msg;
        msg << "delta shock with speed " << j.speed << " is not 1-admissible";
        throw Error(Errc::kPrecondition, msg.str());
      }
      CompositeSolution c;
      c.construction = "direct_delta";
      c.fan.left = l;
      c.fan.right = r;
      c.fan.waves.push_back(delta_wave(*j.spec));
      c.middle = {l.u, l.v};
      return c;
    });
  }
  if (l.v * r.v > 0.0) {
    attempt("classical", [&] { return solve_riemann_classical(l, r); });
  }
  if (r.u > l.u && l.v != 0.0) {
    for (AppendixProcedure p : {AppendixProcedure::kRw1DeltaRw2, AppendixProcedure::kSw1DeltaRw2,
                                AppendixProcedure::kRw1DeltaSw2}) {
      for (SpeedChoice sc : {SpeedChoice::kLambda1, SpeedChoice::kLambda2}) {
        attempt("appendix " + to_string(p) + " " + to_string(sc),
                [&] { return appendix_join(l, r, p, sc).solution; });
      }
    }
  }
  return out;
}

}  // namespace dshock::brio
