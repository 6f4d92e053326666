#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <random>
#include <sstream>

#include "dshock/asymptotics.hpp"
#include "dshock/brio.hpp"
#include "dshock/csv.hpp"
#include "dshock/error.hpp"
#include "dshock/gendelta.hpp"
#include "dshock/viscous.hpp"
#include "dshock/weakform.hpp"

namespace dshock::cli {

namespace {

using toml::Value;

[[noreturn]] void parse_fail(const Value& at, const std::string& msg) {
  throw Error(Errc::kParse, at.where() + ": " + msg);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string state_str(const State& s) { return "(" + num(s.u) + ", " + num(s.v) + ")"; }

// Rejects keys of `table` outside `allowed`; a missing table is fine.
void check_keys(const Value& cfg, const std::string& table, std::initializer_list<const char*> allowed) {
  const Value* t = toml::find_path(cfg, table);
  if (!t) return;
  if (!t->is_table()) parse_fail(*t, "'" + table + "' must be a table");
  for (const auto& [key, v] : t->as_table()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      parse_fail(v, "unknown key '" + table + "." + key + "'");
    }
  }
}

void check_top(const Value& cfg, std::initializer_list<const char*> allowed) {
  for (const auto& [key, v] : cfg.as_table()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      parse_fail(v, "unknown table or key '" + key + "'");
    }
  }
}

void write(const Options& opt, const std::string& name, const std::string& content, std::ostream& log) {
  std::filesystem::create_directories(opt.out);
  const auto path = opt.out / name;
  write_file_atomic(path, content);
  log << "wrote " << path.string() << "\n";
}

double tolerance(const Value& cfg, const Options& opt, double fallback) {
  const double tol = opt.tol ? *opt.tol : toml::get_double(cfg, "run.tol", fallback);
  if (!(tol > 0.0)) throw Error(Errc::kParse, "tolerance must be positive");
  return tol;
}

Carrier carrier_from(const Value& v) {
  const std::string& s = v.as_string();
  if (s == "u") return Carrier::kU;
  if (s == "v") return Carrier::kV;
  parse_fail(v, "carrier must be \"u\" or \"v\", got \"" + s + "\"");
}

void require_brio(const Value& cfg, const char* command) {
  if (!is_brio(cfg)) {
    throw Error(Errc::kInvalidInput,
                std::string(command) + " supports the Brio flux only (set [flux] name = \"brio\")");
  }
}

Polynomial polynomial_from(const Value& v) {
  std::vector<Monomial> terms;
  for (const Value& term : v.as_array()) {
    const auto& t = term.as_array();
    if (t.size() != 3) parse_fail(term, "a flux term is [coef, pu, pv]");
    const long long pu = t[1].as_int(), pv = t[2].as_int();
    if (pu < 0 || pv < 0 || pu > 16 || pv > 16) parse_fail(term, "exponents must lie in [0, 16]");
    terms.push_back({t[0].as_double(), static_cast<int>(pu), static_cast<int>(pv)});
  }
  return Polynomial(std::move(terms));
}

std::string polynomial_toml(const Polynomial& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.terms().size(); ++k) {
    const Monomial& m = p.terms()[k];
    s += (k ? ", [" : "[") + format_double(m.coef) + ", " + std::to_string(m.pu) + ", " +
         std::to_string(m.pv) + "]";
  }
  return s + "]";
}

std::string state_toml(const State& s) {
  return "[" + format_double(s.u) + ", " + format_double(s.v) + "]";
}

CsvTable verify_table() { return CsvTable({"index", "phi_id", "r1", "r2", "error_estimate", "pass"}); }

void append_verify(CsvTable& t, long long index, const weakform::VerifyReport& rep) {
  for (const auto& e : rep.entries) {
    t.add_row({index, e.phi_id, e.r1, e.r2, e.error_estimate, static_cast<long long>(e.pass)});
  }
}

weakform::VerifyReport verify_solution(const FluxPair& flux, const SingularSolution& sol, double tol,
                                       const Options& opt) {
  const auto battery = weakform::standard_battery(sol);
  return weakform::verify(flux, sol, battery, tol, {}, opt.jobs);
}

// Uniform in [lo, hi] from the top 53 bits, so the stream is the same on
// every standard library.
double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

int parse_dyadic(const std::string& text) {
  auto bad = [&]() -> int {
    throw Error(Errc::kParse, "'" + text + "' is not a dyadic value 2^-k (e.g. 2^-12 or 0.25)");
  };
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '(' && c != ')') s += c;
  }
  if (s.rfind("2^", 0) == 0) {
    try {
      std::size_t used = 0;
      const int e = std::stoi(s.substr(2), &used);
      if (used != s.size() - 2 || e > 0 || e < -60) return bad();
      return -e;
    } catch (const std::logic_error&) {
      return bad();
    }
  }
  double x = 0.0;
  try {
    std::size_t used = 0;
    x = std::stod(s, &used);
    if (used != s.size()) return bad();
  } catch (const std::logic_error&) {
    return bad();
  }
  if (!(x > 0.0 && x <= 1.0)) return bad();
  int e = 0;
  const double m = std::frexp(x, &e);
  if (m != 0.5 || e - 1 < -60) return bad();
  return 1 - e;
}

bool is_brio(const Value& cfg) {
  const Value* f = toml::find_path(cfg, "flux");
  return f && f->is_table() && !f->find("f") && !f->find("g") &&
         toml::get_string(cfg, "flux.name", "") == "brio";
}

FluxPair flux_from_config(const Value& cfg) {
  const Value& flux = toml::require(cfg, "flux");
  if (!flux.is_table()) parse_fail(flux, "'flux' must be a table");
  check_keys(cfg, "flux", {"name", "f", "g"});
  const Value* f = flux.find("f");
  const Value* g = flux.find("g");
  if (f || g) {
    if (!f || !g) parse_fail(flux, "a polynomial flux needs both f and g");
    return FluxPair(toml::get_string(cfg, "flux.name", "custom"), polynomial_from(*f), polynomial_from(*g));
  }
  const Value& name = toml::require(cfg, "flux.name");
  if (name.as_string() == "brio") return brio_flux();
  parse_fail(name, "unknown flux '" + name.as_string() + "' (use \"brio\" or give f and g)");
}

RiemannData data_from_config(const Value& cfg) {
  check_keys(cfg, "data", {"left", "right", "x0"});
  return RiemannData(toml::get_state(cfg, "data.left"), toml::get_state(cfg, "data.right"),
                     toml::get_double(cfg, "data.x0", 0.0));
}

std::string solution_to_toml(const FluxPair& flux, const SingularSolution& sol) {
  std::ostringstream s;
  s << "[flux]\nname = \"" << flux.name() << "\"\n";
  s << "f = " << polynomial_toml(flux.f()) << "\n";
  s << "g = " << polynomial_toml(flux.g()) << "\n\n";
  s << "[solution]\ncarrier = \"" << to_string(sol.carrier) << "\"\n\n";
  const Profile& bg = sol.background;
  s << "[background]\norigin = " << format_double(bg.origin()) << "\nstates = [";
  for (std::size_t k = 0; k < bg.regions().size(); ++k) {
    if (bg.regions()[k].smooth) {
      throw Error(Errc::kInvalidInput, "solution file: rarefaction backgrounds are not supported");
    }
    s << (k ? ", " : "") << state_toml(bg.regions()[k].constant);
  }
  s << "]\nspeeds = [";
  for (std::size_t k = 0; k < bg.edges().size(); ++k) s << (k ? ", " : "") << format_double(bg.edges()[k]);
  s << "]\n";
  for (const Arc& arc : sol.graph.arcs) {
    if (arc.pieces().size() != 1 || std::isfinite(arc.end_time())) {
      throw Error(Errc::kInvalidInput, "solution file: only straight unbounded arcs are supported");
    }
    const ArcPiece& p = arc.pieces().front();
    s << "\n[[arc]]\nx0 = " << format_double(p.x_begin) << "\nt0 = " << format_double(p.t_begin)
      << "\nspeed = " << format_double(p.speed) << "\namp0 = " << format_double(p.amp_begin)
      << "\nrate = " << format_double(p.amp_rate) << "\namp2_0 = " << format_double(p.amp2_begin)
      << "\namp2_rate = " << format_double(p.amp2_rate) << "\n";
  }
  return s.str();
}

SingularSolution solution_from_config(const Value& cfg) {
  check_keys(cfg, "solution", {"carrier"});
  check_keys(cfg, "background", {"origin", "states", "speeds"});
  SingularSolution sol;
  const Value& carrier = toml::require(cfg, "solution.carrier");
  const std::string& c = carrier.as_string();
  if (c == "u") {
    sol.carrier = Carrier::kU;
  } else if (c == "v") {
    sol.carrier = Carrier::kV;
  } else if (c == "both") {
    sol.carrier = Carrier::kBoth;
  } else {
    parse_fail(carrier, "carrier must be \"u\", \"v\" or \"both\"");
  }
  const Value& states = toml::require(cfg, "background.states");
  const std::vector<double> speeds = toml::get_doubles(cfg, "background.speeds", {});
  const auto& st = states.as_array();
  if (st.empty() || st.size() != speeds.size() + 1) {
    parse_fail(states, "background needs one more state than speeds");
  }
  WaveFan fan;
  fan.left = toml::to_state(st.front());
  fan.right = toml::to_state(st.back());
  for (std::size_t k = 0; k < speeds.size(); ++k) {
    ElementaryWave w;
    w.type = WaveType::kShock;
    w.left = toml::to_state(st[k]);
    w.right = toml::to_state(st[k + 1]);
    w.speed_lo = w.speed_hi = speeds[k];
    fan.waves.push_back(std::move(w));
  }
  sol.background = Profile::from_fan(fan, toml::get_double(cfg, "background.origin", 0.0));
  if (const Value* arcs = toml::find_path(cfg, "arc")) {
    for (const Value& a : arcs->as_array()) {
      for (const auto& [key, v] : a.as_table()) {
        static const char* known[] = {"x0", "t0", "speed", "amp0", "rate", "amp2_0", "amp2_rate"};
        if (std::none_of(std::begin(known), std::end(known), [&](const char* k) { return key == k; })) {
          parse_fail(v, "unknown key 'arc." + key + "'");
        }
      }
      const double t0 = toml::get_double(a, "t0", 0.0);
      if (!(t0 >= 0.0)) parse_fail(a, "arc t0 must be nonnegative");
      sol.graph.arcs.push_back(Arc::straight(
          toml::require(a, "x0").as_double(), t0, toml::require(a, "speed").as_double(),
          toml::get_double(a, "amp0", 0.0), toml::get_double(a, "rate", 0.0),
          toml::get_double(a, "amp2_0", 0.0), toml::get_double(a, "amp2_rate", 0.0)));
    }
  }
  return sol;
}

// ---------------------------------------------------------------- delta

bool cmd_delta(const Value& cfg, const Options& opt, std::ostream& log) {
  check_top(cfg, {"flux", "data", "run"});
  check_keys(cfg, "run", {"carrier", "speed", "tol", "random", "seed"});
  const FluxPair flux = flux_from_config(cfg);
  const Carrier carrier = carrier_from(toml::require(cfg, "run.carrier"));
  const double tol = tolerance(cfg, opt, 1e-7);
  const Value* speed = toml::find_path(cfg, "run.speed");
  const long long random = toml::get_int(cfg, "run.random", 0);
  if (random < 0) parse_fail(*toml::find_path(cfg, "run.random"), "random must be nonnegative");

  auto construct = [&](const RiemannData& d) {
    if (speed) return gendelta::delta_shock_with_speed(flux, d, carrier, speed->as_double());
    return carrier == Carrier::kU ? gendelta::delta_shock_carrier_u(flux, d)
                                  : gendelta::delta_shock_carrier_v(flux, d);
  };

  CsvTable table({"index", "flux", "carrier", "u_left", "v_left", "u_right", "v_right", "x0", "speed",
                  "amplitude_rate", "max_residual", "pass"});
  CsvTable vt = verify_table();
  bool ok = true;
  auto record = [&](long long index, const gendelta::DeltaShockSpec& spec) {
    const SingularSolution sol = spec.solution();
    const auto rep = verify_solution(flux, sol, tol, opt);
    const RiemannData& d = spec.data;
    table.add_row({index, flux.name(), to_string(spec.carrier), d.left.u, d.left.v, d.right.u, d.right.v,
                   d.jump_location, spec.speed, spec.amplitude_rate, rep.max_residual,
                   static_cast<long long>(rep.pass)});
    append_verify(vt, index, rep);
    ok = ok && rep.pass;
    log << "delta " << index << ": L = " << state_str(d.left) << ", R = " << state_str(d.right)
        << ", carrier " << to_string(spec.carrier) << ", c = " << num(spec.speed)
        << ", alpha' = " << num(spec.amplitude_rate) << ", max residual " << num(rep.max_residual)
        << (rep.pass ? " (pass)" : " (FAIL)") << (rep.converged ? "" : ", quadrature not converged")
        << "\n";
    return sol;
  };

  if (random == 0) {
    const auto spec = construct(data_from_config(cfg));
    const SingularSolution sol = record(0, spec);
    write(opt, "solution.toml", solution_to_toml(flux, sol), log);
  } else {
    // No randomness without an explicit seed.
    std::optional<std::uint64_t> seed = opt.seed;
    if (!seed) {
      if (const Value* s = toml::find_path(cfg, "run.seed")) seed = static_cast<std::uint64_t>(s->as_int());
    }
    if (!seed) throw Error(Errc::kParse, "run.random needs a seed (--seed or run.seed)");
    std::mt19937_64 gen(*seed);
    long long made = 0, draws = 0;
    while (made < random) {
      if (++draws > 100 * random) throw Error(Errc::kInvalidInput, "too many degenerate random draws");
      const State l{uniform(gen, -2, 2), uniform(gen, -2, 2)};
      const State r{uniform(gen, -2, 2), uniform(gen, -2, 2)};
      gendelta::DeltaShockSpec spec;
      try {
        spec = construct(RiemannData(l, r));
      } catch (const Error& e) {
        if (e.code() == Errc::kDegenerateJump) continue;
        throw;
      }
      record(made++, spec);
    }
  }
  write(opt, "delta.csv", table.str(), log);
  write(opt, "verify.csv", vt.str(), log);
  log << (ok ? "delta: all verifications passed" : "delta: verification FAILED") << " (tol "
      << num(tol) << ")\n";
  return ok;
}

// ---------------------------------------------------------------- riemann

namespace {

brio::AppendixProcedure procedure_from(const Value& v) {
  const std::string& s = v.as_string();
  if (s == "rw1_delta_rw2") return brio::AppendixProcedure::kRw1DeltaRw2;
  if (s == "sw1_delta_rw2") return brio::AppendixProcedure::kSw1DeltaRw2;
  if (s == "rw1_delta_sw2") return brio::AppendixProcedure::kRw1DeltaSw2;
  parse_fail(v, "procedure must be rw1_delta_rw2, sw1_delta_rw2 or rw1_delta_sw2");
}

brio::SpeedChoice speed_choice_from(const Value& v) {
  const std::string& s = v.as_string();
  if (s == "lambda1") return brio::SpeedChoice::kLambda1;
  if (s == "lambda2") return brio::SpeedChoice::kLambda2;
  parse_fail(v, "speed_choice must be lambda1 or lambda2");
}

// Entropy admissibility of one wave, with a small slack for rounding.
bool wave_admissible(const ElementaryWave& w) {
  constexpr double kSlack = 1e-9;
  switch (w.type) {
    case WaveType::kShock:
      return brio::lax_shock(w.family, w.left, w.right, w.speed_lo, kSlack);
    case WaveType::kRarefaction:
      return brio::lambda(w.family, w.left) <= brio::lambda(w.family, w.right) + kSlack;
    case WaveType::kDeltaShock:
      for (int i : {1, 2}) {
        if (brio::lambda(i, w.right) - kSlack <= w.speed_lo &&
            w.speed_lo <= brio::lambda(i, w.left) + kSlack) {
          return true;
        }
      }
      return false;
  }
  return false;
}

void sample_curve(CsvTable& t, const std::string& label, const brio::WaveCurve& curve, double lo,
                  double hi, int n) {
  for (int k = 0; k < n; ++k) {
    const double v = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    if (!curve.contains(v)) continue;
    if (curve.kind() == brio::CurveKind::kShock && v == curve.anchor().v) continue;
    const State s = curve.at(v);
    t.add_row({label, v, s.u, brio::lambda(curve.family(), s), curve.speed(v)});
  }
}

CsvTable curves_table() { return CsvTable({"label", "v", "u", "lambda_i", "sigma"}); }

// Forward 1-curves through `a` and backward 2-curves through `b`.
void sample_phase_plane(CsvTable& t, const State& a, const State& b, double lo, double hi, int n) {
  sample_curve(t, "rw1", brio::rarefaction_curve(1, a), lo, hi, n);
  sample_curve(t, "sw1", brio::shock_curve(1, a), lo, hi, n);
  if (b.v != 0.0) sample_curve(t, "rw2", brio::rarefaction_curve(2, b), lo, hi, n);
  sample_curve(t, "sw2", brio::shock_curve(2, b), lo, hi, n);
}

}  // namespace

bool cmd_riemann(const Value& cfg, const Options& opt, std::ostream& log) {
  check_top(cfg, {"flux", "data", "run"});
  check_keys(cfg, "run", {"method", "procedure", "speed_choice", "tol", "samples"});
  require_brio(cfg, "riemann");
  const FluxPair flux = brio_flux();
  const RiemannData data = data_from_config(cfg);
  const State& l = data.left;
  const State& r = data.right;
  const double tol = tolerance(cfg, opt, 1e-6);
  const std::string method = toml::get_string(cfg, "run.method", "auto");
  const long long samples = toml::get_int(cfg, "run.samples", 200);
  if (samples < 2) throw Error(Errc::kParse, "run.samples must be at least 2");

  const auto alternatives = brio::enumerate_solutions(l, r);
  brio::CompositeSolution chosen;
  if (method == "sign_change") {
    chosen = brio::solve_riemann_sign_change(l, r);
  } else if (method == "classical") {
    chosen = brio::solve_riemann_classical(l, r);
  } else if (method == "direct") {
    const auto join = brio::direct_delta_join(l, r);
    log << "direct join: c = " << num(join.speed) << ", alpha' = " << num(join.amplitude_rate)
        << ", lambda bounds " << join.lambda_bounds << ", inequalities " << join.inequality_left
        << " " << join.inequality_right << "\n";
    const auto it = std::find_if(alternatives.begin(), alternatives.end(),
                                 [](const brio::Alternative& a) { return a.name == "direct_delta"; });
    if (!join.spec || it == alternatives.end() || !it->ok) {
      throw Error(Errc::kPrecondition, "direct delta join is not 1-admissible for these states");
    }
    chosen = *it->solution;
  } else if (method == "appendix") {
    const auto proc = procedure_from(toml::require(cfg, "run.procedure"));
    const auto sc = speed_choice_from(toml::require(cfg, "run.speed_choice"));
    chosen = brio::appendix_join(l, r, proc, sc).solution;
  } else if (method == "auto") {
    if (r.v < 0.0 && 0.0 < l.v) {
      chosen = brio::solve_riemann_sign_change(l, r);
    } else if (l.v * r.v > 0.0) {
      chosen = brio::solve_riemann_classical(l, r);
    } else {
      const auto it = std::find_if(alternatives.begin(), alternatives.end(),
                                   [](const brio::Alternative& a) { return a.ok; });
      if (it == alternatives.end()) {
        throw Error(Errc::kRegimeError, "no construction applies to L = " + state_str(l) +
                                            ", R = " + state_str(r) +
                                            " (the composite solver needs v2 < 0 < v1)");
      }
      chosen = *it->solution;
    }
  } else {
    parse_fail(*toml::find_path(cfg, "run.method"),
               "method must be auto, sign_change, direct, classical or appendix");
  }

  check_fan(chosen.fan, flux);
  const SingularSolution sol = chosen.singular_solution(data.jump_location);
  const auto rep = verify_solution(flux, sol, tol, opt);
  bool ok = rep.pass;

  CsvTable fan({"index", "type", "family", "carrier", "u_left", "v_left", "u_right", "v_right", "speed_lo",
                "speed_hi", "amplitude_rate", "admissible"});
  log << "construction: " << chosen.construction << ", middle (u_m, v_m) = ("
      << num(chosen.middle.u_m) << ", " << num(chosen.middle.v_m) << ")\n";
  for (std::size_t k = 0; k < chosen.fan.waves.size(); ++k) {
    const ElementaryWave& w = chosen.fan.waves[k];
    const bool adm = wave_admissible(w);
    ok = ok && adm;
    const bool delta = w.type == WaveType::kDeltaShock;
    fan.add_row({static_cast<long long>(k), to_string(w.type), static_cast<long long>(w.family),
                 delta ? to_string(w.carrier) : std::string("-"), w.left.u, w.left.v, w.right.u,
                 w.right.v, w.speed_lo, w.speed_hi, w.amplitude_rate, static_cast<long long>(adm)});
    log << "  " << to_string(w.type) << (delta ? "" : std::to_string(w.family)) << " "
        << state_str(w.left) << " -> " << state_str(w.right) << ", speed " << num(w.speed_lo);
    if (w.speed_hi != w.speed_lo) log << ".." << num(w.speed_hi);
    if (delta) log << ", alpha' = " << num(w.amplitude_rate);
    log << (adm ? "" : " [NOT ADMISSIBLE]") << "\n";
  }
  log << "verify: max residual " << num(rep.max_residual) << (rep.pass ? " (pass)" : " (FAIL)") << "\n";

  CsvTable alt({"name", "ok", "max_residual", "verify_pass", "message"});
  for (const auto& a : alternatives) {
    if (!a.ok) {
      alt.add_row({a.name, 0LL, std::nan(""), 0LL, a.message});
      log << "  alternative " << a.name << ": " << a.message << "\n";
      continue;
    }
    const auto ar = a.solution->construction == chosen.construction
                        ? rep
                        : verify_solution(flux, a.solution->singular_solution(data.jump_location), tol, opt);
    alt.add_row({a.name, 1LL, ar.max_residual, static_cast<long long>(ar.pass), std::string()});
    log << "  alternative " << a.name << ": max residual " << num(ar.max_residual)
        << (ar.pass ? " (pass)" : " (FAIL)") << "\n";
  }

  double lo = std::min({l.v, r.v, chosen.middle.v_m}), hi = std::max({l.v, r.v, chosen.middle.v_m});
  CsvTable curves = curves_table();
  sample_phase_plane(curves, l, r, lo - 0.5, hi + 0.5, static_cast<int>(samples));

  write(opt, "fan.csv", fan.str(), log);
  write(opt, "alternatives.csv", alt.str(), log);
  write(opt, "curves.csv", curves.str(), log);
  return ok;
}

// ---------------------------------------------------------------- curves

bool cmd_curves(const Value& cfg, const Options& opt, std::ostream& log) {
  check_top(cfg, {"flux", "run"});
  check_keys(cfg, "run", {"anchor", "target", "v_range", "samples", "tol"});
  require_brio(cfg, "curves");
  const State a = toml::get_state(cfg, "run.anchor");
  const State b = toml::find_path(cfg, "run.target") ? toml::get_state(cfg, "run.target") : a;
  const auto range = toml::get_doubles(cfg, "run.v_range", {a.v - 2.0, a.v + 2.0});
  if (range.size() != 2 || !(range[0] < range[1])) {
    throw Error(Errc::kParse, "run.v_range must be [lo, hi] with lo < hi");
  }
  const long long n = toml::get_int(cfg, "run.samples", 401);
  if (n < 2) throw Error(Errc::kParse, "run.samples must be at least 2");
  const double tol = tolerance(cfg, opt, 1e-8);

  CsvTable t = curves_table();
  sample_phase_plane(t, a, b, range[0], range[1], static_cast<int>(n));
  CsvTable checks({"label", "samples", "max_rh_residual", "max_closed_form_gap", "max_closed_form_rh"});
  bool ok = true;
  for (int family : {1, 2}) {
    const State& anchor = family == 1 ? a : b;
    const auto rep = brio::check_shock_curve(brio::shock_curve(family, anchor), range[0], range[1],
                                             static_cast<int>(n));
    const std::string label = "sw" + std::to_string(family);
    checks.add_row({label, static_cast<long long>(rep.samples), rep.max_rh_residual,
                    rep.max_closed_form_gap, rep.max_closed_form_rh});
    ok = ok && rep.max_rh_residual < tol;
    log << label << " through " << state_str(anchor) << ": " << rep.samples
        << " samples, max RH residual " << num(rep.max_rh_residual) << ", closed-form gap "
        << num(rep.max_closed_form_gap) << ", closed-form RH " << num(rep.max_closed_form_rh)
        << (rep.max_rh_residual < tol ? "" : " [RH CHECK FAILED]") << "\n";
  }
  write(opt, "curves.csv", t.str(), log);
  write(opt, "shock_check.csv", checks.str(), log);
  return ok;
}

// ---------------------------------------------------------------- verify

bool cmd_verify(const Value& cfg, const Options& opt, std::ostream& log) {
  check_top(cfg, {"flux", "solution", "background", "arc", "run"});
  check_keys(cfg, "run", {"tol"});
  const FluxPair flux = flux_from_config(cfg);
  const SingularSolution sol = solution_from_config(cfg);
  const double tol = tolerance(cfg, opt, 1e-7);
  const auto rep = verify_solution(flux, sol, tol, opt);
  CsvTable vt = verify_table();
  append_verify(vt, 0, rep);
  write(opt, "verify.csv", vt.str(), log);
  log << "verify: " << rep.entries.size() << " test functions, max residual " << num(rep.max_residual)
      << ", error estimate " << num(rep.max_error_estimate) << (rep.pass ? " (pass)" : " (FAIL)")
      << "\n";
  return rep.pass;
}

// ---------------------------------------------------------------- asymptotic

namespace {

asymptotics::R2Profile r2_from(const std::string& s) {
  if (s == "centered") return asymptotics::R2Profile::kCentered;
  if (s == "odd_pair") return asymptotics::R2Profile::kOddPair;
  throw Error(Errc::kParse, "r2 must be \"centered\" or \"odd_pair\", got \"" + s + "\"");
}

int exponent_from(const Value& cfg, const char* path, std::optional<int> flag, int fallback) {
  if (flag) return *flag;
  const Value* v = toml::find_path(cfg, path);
  if (!v) return fallback;
  if (v->kind() == Value::Kind::kString) return parse_dyadic(v->as_string());
  if (v->kind() == Value::Kind::kInt) {
    // An integer k stands for 2^-k.
    if (v->as_int() < 0 || v->as_int() > 60) parse_fail(*v, "dyadic exponent must lie in [0, 60]");
    return static_cast<int>(v->as_int());
  }
  return parse_dyadic(format_double(v->as_double()));
}

// Negligible series pass; otherwise the fitted slope must reach slope_min.
bool decays(const std::vector<double>& y, double slope, const asymptotics::DecayOptions& o) {
  const bool negligible = std::all_of(y.begin(), y.end(), [&](double v) { return v < o.noise_floor; });
  return negligible || slope >= o.slope_min;
}

struct Job {
  std::string label;
  asymptotics::FamilyBuilder build;
  SingularSolution target;
  double speed = 0.0;
  double rate = 0.0;
};

}  // namespace

bool cmd_asymptotic(const Value& cfg, const Options& opt, std::ostream& log) {
  using namespace asymptotics;
  check_top(cfg, {"flux", "data", "run"});
  check_keys(cfg, "run", {"variant", "speeds", "r2", "radii", "eps_min", "eps_max", "T", "times",
                          "arbiter", "weak_limit", "order", "panels_per_eps"});
  require_brio(cfg, "asymptotic");
  const FluxPair flux = brio_flux();
  const RiemannData data = data_from_config(cfg);
  const Value& variant_v = toml::require(cfg, "run.variant");
  const std::string variant = variant_v.as_string();
  const R2Profile r2 = r2_from(opt.r2 ? *opt.r2 : toml::get_string(cfg, "run.r2", "centered"));
  const std::vector<double> radii =
      opt.radii ? *opt.radii
                : toml::get_doubles(cfg, "run.radii", {kBatteryRadii.begin(), kBatteryRadii.end()});
  const int k_min = exponent_from(cfg, "run.eps_min", opt.eps_min_exp, 12);
  const int k_max = exponent_from(cfg, "run.eps_max", opt.eps_max_exp, 4);
  if (k_min < k_max) throw Error(Errc::kParse, "eps_min must not exceed eps_max");
  const std::vector<double> eps = dyadic_grid(k_max, k_min);
  const double T = toml::get_double(cfg, "run.T", 1.0);
  const long long nt = toml::get_int(cfg, "run.times", 64);
  if (!(T > 0.0) || nt < 1) throw Error(Errc::kParse, "run.T must be positive and run.times >= 1");
  const std::vector<double> times = time_grid(T, static_cast<int>(nt));
  DecayOptions dopt;
  dopt.jobs = opt.jobs;
  dopt.pairing.order = static_cast<int>(toml::get_int(cfg, "run.order", dopt.pairing.order));
  dopt.pairing.panels_per_eps =
      static_cast<int>(toml::get_int(cfg, "run.panels_per_eps", dopt.pairing.panels_per_eps));
  const bool arbiter = toml::get_bool(cfg, "run.arbiter", variant == "A");
  const bool weak = toml::get_bool(cfg, "run.weak_limit", true);

  std::vector<Job> jobs;
  if (variant == "A") {
    const auto spec = gendelta::delta_shock_carrier_v(flux, data);
    jobs.push_back({"A", [data](double e) { return build_family_a(data, e); }, spec.solution(),
                    spec.speed, spec.amplitude_rate});
  } else if (variant == "B") {
    const auto spec = gendelta::delta_shock_carrier_u(flux, data);
    jobs.push_back({r2 == R2Profile::kCentered ? "B" : "B_" + to_string(r2),
                    [data, r2](double e) { return build_family_b(data, e, r2); }, spec.solution(),
                    spec.speed, spec.amplitude_rate});
  } else if (variant == "corollary") {
    const auto speeds = toml::get_doubles(cfg, "run.speeds", {});
    if (speeds.empty()) throw Error(Errc::kParse, "variant corollary needs run.speeds");
    for (double c : speeds) {
      const auto fam = build_family_corollary(data, c, eps.front());
      const auto spec = gendelta::delta_shock_with_speed(flux, data, Carrier::kV, c);
      jobs.push_back({"corollary_c" + num(c), [data, c](double e) { return build_family_corollary(data, c, e); },
                      spec.solution(), c, fam.amplitude_rate()});
    }
  } else {
    parse_fail(variant_v, "variant must be \"A\", \"B\" or \"corollary\"");
  }

  bool ok = true;
  for (const Job& job : jobs) {
    const auto battery = spatial_battery(data.jump_location, job.speed, radii);
    const DecayReport rep = decay_report(job.label, job.build, battery, eps, times, dopt);
    write(opt, "decay_" + job.label + ".csv", rep.to_csv().str(), log);
    const AsymptoticFamily probe = job.build(eps.front());
    log << job.label << ": c = " << num(job.speed) << ", alpha' = " << num(job.rate)
        << ", correction coefficient b(T) = " << num(probe.b(T).real()) << " + "
        << num(probe.b(T).imag()) << "i, eps 2^-" << k_max << "..2^-" << k_min
        << ", min slope " << num(rep.min_slope()) << (rep.pass ? " (pass)" : " (FAIL)") << "\n";
    for (int eq : {1, 2}) {
      double worst = 1e300;
      for (const auto& s : rep.series) {
        if (s.eq == eq && !s.negligible) worst = std::min(worst, s.slope);
      }
      log << "  eq" << eq << " min slope " << (worst == 1e300 ? std::string("negligible") : num(worst))
          << "\n";
    }
    ok = ok && rep.pass;

    if (arbiter && variant == "A") {
      const double half = 0.5 * job.rate;
      const auto half_build = [data, speed = job.speed, half](double e) {
        return AsymptoticFamily(Variant::kA, data, speed, half, e);
      };
      const DecayReport hr = decay_report(job.label + "_half", half_build, battery, eps, times, dopt);
      write(opt, "decay_" + job.label + "_half.csv", hr.to_csv().str(), log);
      double floor2 = 1e300;
      for (const auto& s : hr.series) {
        if (s.eq == 2) floor2 = std::min(floor2, *std::min_element(s.sup.begin(), s.sup.end()));
      }
      log << "amplitude arbiter: alpha' = " << num(job.rate) << " -> "
          << (rep.pass ? "decays" : "does NOT decay") << " (min slope " << num(rep.min_slope())
          << "); alpha'/2 = " << num(half) << " -> eq2 residual bounded below by " << num(floor2)
          << ", min slope " << num(hr.min_slope()) << "; winner: "
          << (rep.pass && !hr.pass ? "alpha'" : (hr.pass && !rep.pass ? "alpha'/2" : "undecided"))
          << "\n";
    }
    if (weak) {
      const WeakLimitReport wl = weak_limit_check(job.build, job.target, battery, eps, times, dopt.pairing);
      CsvTable t({"eps", "err_u", "err_v", "imag", "slope_u", "slope_v", "slope_imag"});
      for (std::size_t k = 0; k < wl.eps.size(); ++k) {
        t.add_row({wl.eps[k], wl.err_u[k], wl.err_v[k], wl.imag[k], wl.slope_u, wl.slope_v, wl.slope_imag});
      }
      write(opt, "weak_limit_" + job.label + ".csv", t.str(), log);
      const bool wpass = decays(wl.err_u, wl.slope_u, dopt) && decays(wl.err_v, wl.slope_v, dopt) &&
                         decays(wl.imag, wl.slope_imag, dopt);
      log << "  weak limit: slopes u " << num(wl.slope_u) << ", v " << num(wl.slope_v) << ", imag "
          << num(wl.slope_imag) << ", max imag " << num(*std::max_element(wl.imag.begin(), wl.imag.end()))
          << (wpass ? " (pass)" : " (FAIL)") << "\n";
      ok = ok && wpass;
    }
  }
  return ok;
}

// ---------------------------------------------------------------- viscous

bool cmd_viscous(const Value& cfg, const Options& opt, std::ostream& log) {
  check_top(cfg, {"flux", "data", "run"});
  check_keys(cfg, "run", {"half_width", "cells", "mu", "cfl", "T", "snapshots", "window", "speed",
                          "rate"});
  const FluxPair flux = flux_from_config(cfg);
  viscous::ViscousConfig c;
  c.data = data_from_config(cfg);
  c.half_width = toml::get_double(cfg, "run.half_width", c.half_width);
  c.cells = static_cast<int>(toml::get_int(cfg, "run.cells", c.cells));
  c.mu = toml::get_double(cfg, "run.mu", c.mu);
  c.cfl = toml::get_double(cfg, "run.cfl", c.cfl);
  c.final_time = toml::get_double(cfg, "run.T", c.final_time);
  c.snapshots = static_cast<int>(toml::get_int(cfg, "run.snapshots", c.snapshots));

  // Candidate singular part: carrier u when v jumps, else carrier v.
  double speed = 0.0, rate = 0.0;
  Carrier carrier = Carrier::kU;
  if (c.data.dv() != 0.0) {
    const auto s = gendelta::delta_shock_carrier_u(flux, c.data);
    speed = s.speed;
    rate = s.amplitude_rate;
  } else if (c.data.du() != 0.0) {
    const auto s = gendelta::delta_shock_carrier_v(flux, c.data);
    speed = s.speed;
    rate = s.amplitude_rate;
    carrier = Carrier::kV;
  }
  speed = toml::get_double(cfg, "run.speed", speed);
  rate = toml::get_double(cfg, "run.rate", rate);

  const auto r = viscous::run(flux, c);
  const double window = toml::get_double(cfg, "run.window", viscous::default_window(r));
  const auto cs = viscous::concentration_mass(r, speed, window);
  write(opt, "snapshots.csv", r.snapshots_csv().str(), log);
  write(opt, "concentration.csv", cs.to_csv().str(), log);

  const double slope = carrier == Carrier::kU ? cs.slope_u : cs.slope_v;
  const double drift = std::max(r.drift_u, r.drift_v);
  log << "viscous: " << c.cells << " cells, h = " << num(r.h) << ", mu = " << num(c.mu) << ", "
      << r.steps << " steps, dt " << num(r.dt_min) << ".." << num(r.dt_max) << ", cell Peclet "
      << num(r.peclet) << ", conservation drift " << num(drift) << "\n";
  log << "window: centre x0 + " << num(speed) << " t, half-width " << num(window)
      << (cs.clipped ? " [CLIPPED]" : "") << "\n";
  log << "concentration: slope_u " << num(cs.slope_u) << ", slope_v " << num(cs.slope_v) << ", carrier "
      << to_string(carrier) << ", alpha' = " << num(rate);
  if (rate != 0.0) log << ", slope / alpha' = " << num(slope / rate);
  log << ", peaks at T: u " << num(cs.peak_u.back()) << ", v " << num(cs.peak_v.back()) << "\n";
  for (auto comp : {viscous::Component::kV, viscous::Component::kU}) {
    const double ql = comp == viscous::Component::kU ? c.data.left.u : c.data.left.v;
    const double qr = comp == viscous::Component::kU ? c.data.right.u : c.data.right.v;
    if (ql == qr) continue;
    try {
      const auto ft = viscous::track_front(r, comp);
      log << "front of " << (comp == viscous::Component::kU ? "u" : "v") << " moves with speed "
          << num(ft.speed) << "\n";
    } catch (const Error& e) {
      log << "front tracking: " << e.what() << "\n";
    }
    break;
  }

  bool ok = true;
  if (cs.clipped) {
    log << "invariant violated: the window leaves the domain\n";
    ok = false;
  }
  if (drift >= 1e-8) {
    log << "invariant violated: conservation drift " << num(drift) << " >= 1e-8\n";
    ok = false;
  }
  // Rates at rounding level of the data (e.g. a classical shock given to a few
  // digits) carry no sign.
  const double scale = 1.0 + std::max({std::abs(c.data.left.u), std::abs(c.data.left.v),
                                       std::abs(c.data.right.u), std::abs(c.data.right.v)});
  if (std::abs(rate) > 1e-6 * scale * scale && (slope > 0.0) != (rate > 0.0)) {
    log << "concentration slope sign disagrees with alpha'\n";
    ok = false;
  }
  return ok;
}

}  // namespace dshock::cli
