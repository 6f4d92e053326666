#include "dshock/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dshock/error.hpp"

namespace dshock::viscous {

namespace {

double spectral_radius(const FluxPair& flux, const State& s) {
  const Jacobian j = flux.jacobian(s);
  const double half_tr = 0.5 * (j.fu + j.gv);
  const double disc = half_tr * half_tr - (j.fu * j.gv - j.fv * j.gu);
  if (disc >= 0.0) return std::abs(half_tr) + std::sqrt(disc);
  return std::hypot(half_tr, std::sqrt(-disc));  // modulus of a complex pair
}

// Average over [a, b] of the step with jump at s.
double step_average(double left, double right, double s, double a, double b) {
  if (b <= s) return left;
  if (a >= s) return right;
  return (left * (s - a) + right * (b - s)) / (b - a);
}

double slope_second_half(const std::vector<double>& t, const std::vector<double>& y) {
  const double half = 0.5 * t.back();
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < half) continue;
    n += 1;
    st += t[k];
    sy += y[k];
    stt += t[k] * t[k];
    sty += t[k] * y[k];
  }
  if (n < 2) throw Error(Errc::kInvalidInput, "slope fit needs two output times in [T/2, T]");
  return (n * sty - st * sy) / (n * stt - st * st);
}

struct Field {
  std::vector<double> u, v;
};

}  // namespace

double max_initial_speed(const FluxPair& flux, const RiemannData& data) {
  return std::max(spectral_radius(flux, data.left), spectral_radius(flux, data.right));
}

ViscousResult run(const FluxPair& flux, const ViscousConfig& cfg) {
  if (!(cfg.mu > 0.0)) throw Error(Errc::kPrecondition, "viscous: mu must be positive");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.45)) {
    throw Error(Errc::kPrecondition, "viscous: CFL must lie in (0, 0.45]");
  }
  if (cfg.cells < 8 || !(cfg.half_width > 0.0) || !(cfg.final_time > 0.0) || cfg.snapshots < 1) {
    throw Error(Errc::kPrecondition,
                "viscous: needs cells >= 8, positive half-width and final time, snapshots >= 1");
  }
  const double reach = max_initial_speed(flux, cfg.data) * cfg.final_time +
                       10.0 * std::sqrt(cfg.mu * cfg.final_time);
  if (!(cfg.half_width > reach)) {
    std::ostringstream msg;
    msg << "viscous: half-width " << cfg.half_width << " does not exceed speed*T + 10 sqrt(mu T) = "
        << reach;
    throw Error(Errc::kPrecondition, msg.str());
  }

  const int n = cfg.cells;
  const double x0 = cfg.data.jump_location;
  const double h = 2.0 * cfg.half_width / n;
  ViscousResult res;
  res.config = cfg;
  res.h = h;
  res.x.resize(n);
  Field q{std::vector<double>(n), std::vector<double>(n)};
  const State& l = cfg.data.left;
  const State& r = cfg.data.right;
  for (int i = 0; i < n; ++i) {
    const double a = x0 - cfg.half_width + i * h;
    res.x[i] = a + 0.5 * h;
    q.u[i] = step_average(l.u, r.u, x0, a, a + h);
    q.v[i] = step_average(l.v, r.v, x0, a, a + h);
  }
  const double scale = 1.0 + std::max({std::abs(l.u), std::abs(l.v), std::abs(r.u), std::abs(r.v)});

  auto sum = [h](const std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x;
    return s * h;
  };
  const double mass_u0 = sum(q.u), mass_v0 = sum(q.v);
  double out_u = 0.0, out_v = 0.0;  // integrated boundary outflow

  std::vector<double> fu(n), fv(n);
  // Writes dq/dt into d and returns the outflow rates (F_right - F_left).
  auto rhs = [&](const Field& s, Field& d) -> std::pair<double, double> {
    for (int i = 0; i < n; ++i) std::tie(fu[i], fv[i]) = flux({s.u[i], s.v[i]});
    const double mu_h = cfg.mu / h;
    double prev_u = fu[0], prev_v = fv[0];  // ghost equals cell 0
    const double left_u = prev_u, left_v = prev_v;
    for (int i = 0; i < n; ++i) {
      double face_u, face_v;
      if (i + 1 < n) {
        face_u = 0.5 * (fu[i] + fu[i + 1]) - mu_h * (s.u[i + 1] - s.u[i]);
        face_v = 0.5 * (fv[i] + fv[i + 1]) - mu_h * (s.v[i + 1] - s.v[i]);
      } else {
        face_u = fu[i];
        face_v = fv[i];
      }
      d.u[i] = -(face_u - prev_u) / h;
      d.v[i] = -(face_v - prev_v) / h;
      prev_u = face_u;
      prev_v = face_v;
    }
    return {prev_u - left_u, prev_v - left_v};
  };
  auto max_speed = [&](const Field& s) {
    double a = 0.0;
    for (int i = 0; i < n; ++i) a = std::max(a, spectral_radius(flux, {s.u[i], s.v[i]}));
    return a;
  };
  auto check = [&](const Field& s, double t) {
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(s.u[i]) || !std::isfinite(s.v[i]) || std::abs(s.u[i]) > 1e6 * scale ||
          std::abs(s.v[i]) > 1e6 * scale) {
        std::ostringstream msg;
        msg << "viscous: blow-up at t = " << t << ", x = " << res.x[i] << " (u = " << s.u[i]
            << ", v = " << s.v[i] << ")";
        throw Error(Errc::kInstability, msg.str());
      }
    }
  };

  Field k1{std::vector<double>(n), std::vector<double>(n)};
  Field stage = k1, k2 = k1;
  res.snapshots.push_back({0.0, q.u, q.v});
  res.dt_min = std::numeric_limits<double>::infinity();
  double t = 0.0;
  const double diffusive = h * h / (2.0 * cfg.mu);
  for (int out = 1; out <= cfg.snapshots; ++out) {
    const double t_out = cfg.final_time * out / cfg.snapshots;
    while (t < t_out) {
      const double a = max_speed(q);
      res.peclet = std::max(res.peclet, a * h / cfg.mu);
      double dt = cfg.cfl * std::min(a > 0.0 ? h / a : diffusive, diffusive);
      if (t + dt >= t_out || t_out - (t + dt) < 1e-12 * dt) dt = t_out - t;
      if (++res.steps > 50'000'000) {
        throw Error(Errc::kInstability, "viscous: step limit exceeded");
      }
      const auto b1 = rhs(q, k1);
      for (int i = 0; i < n; ++i) {
        stage.u[i] = q.u[i] + dt * k1.u[i];
        stage.v[i] = q.v[i] + dt * k1.v[i];
      }
      const auto b2 = rhs(stage, k2);
      for (int i = 0; i < n; ++i) {
        q.u[i] = 0.5 * (q.u[i] + stage.u[i] + dt * k2.u[i]);
        q.v[i] = 0.5 * (q.v[i] + stage.v[i] + dt * k2.v[i]);
      }
      out_u += 0.5 * dt * (b1.first + b2.first);
      out_v += 0.5 * dt * (b1.second + b2.second);
      t = (dt == t_out - t) ? t_out : t + dt;
      res.dt_min = std::min(res.dt_min, dt);
      res.dt_max = std::max(res.dt_max, dt);
      check(q, t);
      res.drift_u = std::max(res.drift_u, std::abs(sum(q.u) - (mass_u0 - out_u)) /
                                              std::max(1.0, std::abs(mass_u0)));
      res.drift_v = std::max(res.drift_v, std::abs(sum(q.v) - (mass_v0 - out_v)) /
                                              std::max(1.0, std::abs(mass_v0)));
    }
    res.snapshots.push_back({t_out, q.u, q.v});
  }
  return res;
}

CsvTable ViscousResult::snapshots_csv() const {
  CsvTable t({"t", "x", "u", "v"});
  for (const Snapshot& s : snapshots) {
    for (std::size_t i = 0; i < x.size(); ++i) t.add_row({s.t, x[i], s.u[i], s.v[i]});
  }
  return t;
}

double default_window(const ViscousResult& r) {
  return std::max(10.0 * std::sqrt(r.config.mu * r.config.final_time), 50.0 * r.h);
}

ConcentrationSeries concentration_mass(const ViscousResult& r, double speed, double halfwidth) {
  if (!(halfwidth > 0.0)) throw Error(Errc::kInvalidInput, "concentration: window must be positive");
  ConcentrationSeries cs;
  cs.speed = speed;
  cs.halfwidth = halfwidth;
  const RiemannData& d = r.config.data;
  const double lo_dom = r.x.front() - 0.5 * r.h, hi_dom = r.x.back() + 0.5 * r.h;
  for (const Snapshot& s : r.snapshots) {
    const double c = d.jump_location + speed * s.t;
    if (c - halfwidth < lo_dom || c + halfwidth > hi_dom) cs.clipped = true;
    double mu = 0.0, mv = 0.0, pu = 0.0, pv = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      if (std::abs(r.x[i] - c) > halfwidth) continue;
      const double a = r.x[i] - 0.5 * r.h, b = r.x[i] + 0.5 * r.h;
      const double du = s.u[i] - step_average(d.left.u, d.right.u, c, a, b);
      const double dv = s.v[i] - step_average(d.left.v, d.right.v, c, a, b);
      mu += du;
      mv += dv;
      pu = std::max(pu, std::abs(du));
      pv = std::max(pv, std::abs(dv));
    }
    cs.peak_u.push_back(pu);
    cs.peak_v.push_back(pv);
    cs.times.push_back(s.t);
    cs.m_u.push_back(mu * r.h);
    cs.m_v.push_back(mv * r.h);
  }
  cs.slope_u = slope_second_half(cs.times, cs.m_u);
  cs.slope_v = slope_second_half(cs.times, cs.m_v);
  return cs;
}

CsvTable ConcentrationSeries::to_csv() const {
  CsvTable t({"t", "m_u", "m_v", "slope_u", "slope_v", "peak_u", "peak_v"});
  for (std::size_t k = 0; k < times.size(); ++k) {
    t.add_row({times[k], m_u[k], m_v[k], slope_u, slope_v, peak_u[k], peak_v[k]});
  }
  return t;
}

FrontTrack track_front(const ViscousResult& r, Component q) {
  const RiemannData& d = r.config.data;
  const double ql = q == Component::kU ? d.left.u : d.left.v;
  const double qr = q == Component::kU ? d.right.u : d.right.v;
  if (ql == qr) throw Error(Errc::kInvalidInput, "track_front: the component does not jump");
  const double level = 0.5 * (ql + qr);
  FrontTrack ft;
  for (const Snapshot& s : r.snapshots) {
    if (s.t == 0.0) continue;
    const std::vector<double>& w = q == Component::kU ? s.u : s.v;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const double a = w[i] - level, b = w[i + 1] - level;
      if (a == 0.0 || (a < 0.0) != (b < 0.0)) {
        const double frac = a == 0.0 ? 0.0 : a / (a - b);
        ft.times.push_back(s.t);
        ft.position.push_back(r.x[i] + frac * r.h);
        break;
      }
    }
  }
  if (ft.times.size() < 2) throw Error(Errc::kInvalidInput, "track_front: front not found");
  ft.speed = slope_second_half(ft.times, ft.position);
  return ft;
}

}  // namespace dshock::viscous
