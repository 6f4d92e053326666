#include "dshock/weakform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "dshock/error.hpp"
#include "dshock/quadrature.hpp"

namespace dshock::weakform {

namespace {

struct Pair {
  double a = 0.0;
  double b = 0.0;
  Pair& operator+=(const Pair& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend Pair operator*(double s, const Pair& p) { return {s * p.a, s * p.b}; }
};

struct Terms {
  Pair bulk;      // double integrals of q phi_t + F phi_x
  Pair initial;   // integrals of the initial data against phi(., 0)
  Pair singular;  // line integrals + initial amplitudes (slot 1, slot 2)
};

std::vector<double> clipped_breaks(const Profile& bg, double t, double lo, double hi) {
  std::vector<double> b = bg.breakpoints(t);
  std::sort(b.begin(), b.end());
  b.erase(std::remove_if(b.begin(), b.end(), [&](double x) { return x <= lo || x >= hi; }),
          b.end());
  return b;
}

Pair bulk_integral(const FluxPair& flux, const Profile& bg, const TestFunction& phi,
                   int panels, int order) {
  auto at_time = [&](double t) {
    const auto breaks = clipped_breaks(bg, t, phi.x_min(), phi.x_max());
    auto integrand = [&](double x) {
      const State s = bg.at(x, t);
      const auto [f, g] = flux(s);
      const auto j = phi.jet(x, t);
      return Pair{s.u * j.dt + f * j.dx, s.v * j.dt + g * j.dx};
    };
    Pair sum;
    double a = phi.x_min();
    for (std::size_t k = 0; k <= breaks.size(); ++k) {
      const double b = k < breaks.size() ? breaks[k] : phi.x_max();
      if (b > a) {
        if (bg.smooth_at(0.5 * (a + b), t)) {
          // Rarefaction profiles can behave like sqrt(distance) at their edges
          // (loss of genuine nonlinearity); x = a + (b - a)(3s^2 - 2s^3)
          // removes the singularity.
          auto mapped = [&](double s) {
            const double w = s * s * (3.0 - 2.0 * s);
            const double dw = 6.0 * s * (1.0 - s);
            return (b - a) * dw * integrand(a + (b - a) * w);
          };
          sum += integrate(mapped, 0.0, 1.0, panels, order);
        } else {
          sum += integrate(integrand, a, b, panels, order);
        }
      }
      a = b;
    }
    return sum;
  };
  // The x-integral is only piecewise smooth in t: it kinks whenever an edge
  // ray enters or leaves the support.
  std::vector<double> t_breaks;
  for (double e : bg.edges()) {
    if (e == 0.0) continue;
    for (double xb : {phi.x_min(), phi.x_max()}) {
      const double t = (xb - bg.origin()) / e;
      if (t > phi.t_min() && t < phi.t_max()) t_breaks.push_back(t);
    }
  }
  std::sort(t_breaks.begin(), t_breaks.end());
  t_breaks.push_back(phi.t_max());
  // Panels are shared out by length so that splitting does not multiply the
  // work.
  const double span = phi.t_max() - phi.t_min();
  Pair sum;
  double lo = phi.t_min();
  for (double hi : t_breaks) {
    if (hi <= lo) continue;
    const int n = std::max(6, static_cast<int>(std::ceil(panels * (hi - lo) / span)));
    sum += integrate(at_time, lo, hi, n, order);
    lo = hi;
  }
  return sum;
}

Pair initial_integral(const Profile& bg, const TestFunction& phi, int panels, int order) {
  if (!phi.touches_initial_line()) return {};
  const double jump = bg.origin();
  const double breaks[] = {jump};
  auto integrand = [&](double x) {
    const State s = bg.initial(x);
    const double p = phi(x, 0.0);
    return Pair{s.u * p, s.v * p};
  };
  return integrate_split(integrand, phi.x_min(), phi.x_max(), breaks, panels, order);
}

double tangential(const Arc& arc, const TestFunction& phi, AmplitudeSlot slot, int panels,
                  int order) {
  double sum = 0.0;
  for (const ArcPiece& p : arc.pieces()) {
    double lo = std::max(p.t_begin, phi.t_min());
    double hi = std::min(p.t_end, phi.t_max());
    // clip to the times at which the carrier line crosses the x-support
    if (p.speed != 0.0) {
      const double ta = p.t_begin + (phi.x_min() - p.x_begin) / p.speed;
      const double tb = p.t_begin + (phi.x_max() - p.x_begin) / p.speed;
      lo = std::max(lo, std::min(ta, tb));
      hi = std::min(hi, std::max(ta, tb));
    } else if (p.x_begin <= phi.x_min() || p.x_begin >= phi.x_max()) {
      continue;
    }
    if (!(hi > lo)) continue;
    auto integrand = [&](double t) {
      const double x = p.position(t);
      const double amp = slot == AmplitudeSlot::kFirst ? p.amplitude(t) : p.amplitude2(t);
      const auto j = phi.jet(x, t);
      return amp * (j.dt + p.speed * j.dx);
    };
    sum += integrate(integrand, lo, hi, panels, order);
  }
  return sum;
}

Pair singular_terms(const SingularSolution& sol, const TestFunction& phi, int panels,
                    int order) {
  Pair out;
  for (const Arc& arc : sol.graph.arcs) {
    out.a += tangential(arc, phi, AmplitudeSlot::kFirst, panels, order);
    out.b += tangential(arc, phi, AmplitudeSlot::kSecond, panels, order);
    if (arc.touches_axis()) {
      const double p0 = phi(arc.start_point(), 0.0);
      out.a += arc.amplitude(0.0) * p0;
      out.b += arc.amplitude2(0.0) * p0;
    }
  }
  return out;
}

Terms terms(const FluxPair& flux, const SingularSolution& sol, const TestFunction& phi,
            int panels, int order) {
  return {bulk_integral(flux, sol.background, phi, panels, order),
          initial_integral(sol.background, phi, panels, order),
          singular_terms(sol, phi, panels, order)};
}

// Which identity receives which amplitude slot.
struct Attach {
  bool first_to_r1 = false;
  bool first_to_r2 = false;
  bool second_to_r2 = false;
};

Residual assemble(const FluxPair& flux, const SingularSolution& sol, const TestFunction& phi,
                  const QuadratureOptions& opt, Attach attach) {
  auto eval = [&](int panels) {
    const Terms t = terms(flux, sol, phi, panels, opt.order);
    Residual r;
    r.r1 = t.bulk.a + t.initial.a + (attach.first_to_r1 ? t.singular.a : 0.0);
    r.r2 = t.bulk.b + t.initial.b + (attach.first_to_r2 ? t.singular.a : 0.0) +
           (attach.second_to_r2 ? t.singular.b : 0.0);
    return r;
  };
  Residual r = eval(opt.panels);
  if (opt.estimate_error) {
    const Residual fine = eval(2 * opt.panels);
    r.error_estimate = std::max(std::abs(fine.r1 - r.r1), std::abs(fine.r2 - r.r2));
    r.r1 = fine.r1;
    r.r2 = fine.r2;
  }
  return r;
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

void require_carrier(const SingularSolution& sol, Carrier c, const char* op) {
  if (sol.carrier != c) {
    throw Error(Errc::kPrecondition, std::string(op) + ": solution carrier is " +
                                         to_string(sol.carrier));
  }
}

}  // namespace

double tangential_term(const Arc& arc, const TestFunction& phi, AmplitudeSlot slot,
                       const QuadratureOptions& opt) {
  return tangential(arc, phi, slot, opt.panels, opt.order);
}

Residual residual_carrier_v(const FluxPair& flux, const SingularSolution& sol,
                            const TestFunction& phi, const QuadratureOptions& opt) {
  require_carrier(sol, Carrier::kV, "residual_carrier_v");
  return assemble(flux, sol, phi, opt, {false, true, false});
}

Residual residual_carrier_u(const FluxPair& flux, const SingularSolution& sol,
                            const TestFunction& phi, const QuadratureOptions& opt) {
  require_carrier(sol, Carrier::kU, "residual_carrier_u");
  return assemble(flux, sol, phi, opt, {true, false, false});
}

Residual residual_two_sided(const FluxPair& flux, const SingularSolution& sol,
                            const TestFunction& phi, const QuadratureOptions& opt) {
  require_carrier(sol, Carrier::kBoth, "residual_two_sided");
  return assemble(flux, sol, phi, opt, {true, false, true});
}

Residual residual(const FluxPair& flux, const SingularSolution& sol, const TestFunction& phi,
                  const QuadratureOptions& opt) {
  switch (sol.carrier) {
    case Carrier::kU: return residual_carrier_u(flux, sol, phi, opt);
    case Carrier::kV: return residual_carrier_v(flux, sol, phi, opt);
    case Carrier::kBoth: return residual_two_sided(flux, sol, phi, opt);
  }
  return {};
}

CsvTable VerifyReport::to_csv() const {
  CsvTable table({"phi_id", "r1", "r2", "pass"});
  for (const VerifyEntry& e : entries) {
    table.add_row({e.phi_id, e.r1, e.r2, std::string(e.pass ? "true" : "false")});
  }
  return table;
}

VerifyReport verify(const FluxPair& flux, const SingularSolution& sol,
                    std::span<const TestFunction> battery, double tol,
                    const QuadratureOptions& opt, int jobs) {
  if (battery.empty()) throw Error(Errc::kInvalidInput, "verify: empty test-function battery");
  std::vector<Residual> results(battery.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t k = next++; k < battery.size(); k = next++) {
      try {
        results[k] = residual(flux, sol, battery[k], opt);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const int n_threads = std::clamp(jobs, 1, static_cast<int>(battery.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  VerifyReport report;
  report.tol = tol;
  for (std::size_t k = 0; k < battery.size(); ++k) {
    const Residual& r = results[k];
    VerifyEntry e;
    e.phi_id = battery[k].id().empty() ? "phi" + std::to_string(k) : battery[k].id();
    e.r1 = r.r1;
    e.r2 = r.r2;
    e.error_estimate = r.error_estimate;
    const double m = std::max(std::abs(r.r1), std::abs(r.r2));
    e.pass = std::isfinite(m) && m < tol;
    report.max_residual = std::max(report.max_residual, m);
    report.max_error_estimate = std::max(report.max_error_estimate, r.error_estimate);
    if (opt.estimate_error && r.error_estimate >= 0.1 * tol) report.converged = false;
    report.entries.push_back(std::move(e));
  }
  report.pass = report.converged &&
                std::all_of(report.entries.begin(), report.entries.end(),
                            [](const VerifyEntry& e) { return e.pass; });
  return report;
}

std::vector<TestFunction> make_battery(double origin, double s_lo, double s_hi,
                                       std::span<const double> radii) {
  std::vector<TestFunction> out;
  const double s_mid = 0.5 * (s_lo + s_hi);
  const double early[] = {origin - 0.25, origin, origin + 0.25};
  const double late[] = {origin + s_lo, origin + s_mid, origin + s_hi};
  for (double r : radii) {
    for (int k = 0; k < 3; ++k) {
      out.emplace_back(early[k], 0.0, r, r, "t0_x" + std::to_string(k) + "_r" + short_number(r));
      out.emplace_back(late[k], 1.0, r, r, "t1_x" + std::to_string(k) + "_r" + short_number(r));
    }
  }
  return out;
}

std::vector<TestFunction> standard_battery(const SingularSolution& sol) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  auto take = [&](double s) {
    lo = any ? std::min(lo, s) : s;
    hi = any ? std::max(hi, s) : s;
    any = true;
  };
  for (double e : sol.background.edges()) take(e);
  for (const Arc& a : sol.graph.arcs) {
    for (const ArcPiece& p : a.pieces()) take(p.speed);
  }
  const double radii[] = {0.5, 1.0, 2.0};
  return make_battery(sol.background.origin(), lo, hi, radii);
}

}  // namespace dshock::weakform
