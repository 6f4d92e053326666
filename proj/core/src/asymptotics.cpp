#include "dshock/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "dshock/error.hpp"
#include "dshock/gendelta.hpp"
#include "dshock/mollifier.hpp"
#include "dshock/quadrature.hpp"

namespace dshock::asymptotics {

namespace {

constexpr double kBand = 30.0;  // quadrature band half-width in units of eps

struct Ramp {
  double value;
  double dz;
};

// left for z <= -20, mid for |z| <= 10, right for z >= 20.
Ramp three_level(double z, double left, double mid, double right) {
  if (z <= -20.0) return {left, 0.0};
  if (z < -10.0) {
    const double s = (z + 20.0) / 10.0;
    return {left + (mid - left) * smooth_step(s), (mid - left) * dsmooth_step(s) / 10.0};
  }
  if (z <= 10.0) return {mid, 0.0};
  if (z < 20.0) {
    const double s = (z - 10.0) / 10.0;
    return {mid + (right - mid) * smooth_step(s), (right - mid) * dsmooth_step(s) / 10.0};
  }
  return {right, 0.0};
}

const FluxPair& brio() {
  static const FluxPair f = brio_flux();
  return f;
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kA: return "A";
    case Variant::kB: return "B";
    case Variant::kCorollary: return "corollary";
  }
  return "?";
}

std::string to_string(R2Profile p) { return p == R2Profile::kCentered ? "centered" : "odd_pair"; }

// Values and z-derivatives of the travelling blocks; the 1/eps factors of
// delta, R and R2 are included in both.
struct AsymptoticFamily::Blocks {
  Ramp U{0.0, 0.0};
  Ramp V{0.0, 0.0};
  double delta = 0.0, delta_z = 0.0;
  double rr = 0.0, rr_z = 0.0;  // R = i rr
  double r2 = 0.0, r2_z = 0.0;
};

AsymptoticFamily::AsymptoticFamily(Variant variant, const RiemannData& data, double speed,
                                   double amplitude_rate, double eps, R2Profile r2)
    : variant_(variant), data_(data), speed_(speed), rate_(amplitude_rate), eps_(eps), r2_(r2) {
  if (!(eps > 0.0) || !std::isfinite(eps) || !std::isfinite(speed) ||
      !std::isfinite(amplitude_rate)) {
    throw Error(Errc::kInvalidInput, "asymptotic family: eps must be positive and parameters finite");
  }
}

AsymptoticFamily AsymptoticFamily::constant(const State& s, double eps) {
  AsymptoticFamily f(Variant::kCorollary, RiemannData(s, s), 0.0, 0.0, eps);
  f.constant_ = true;
  return f;
}

double AsymptoticFamily::u_plateau() const {
  if (constant_) return data_.left.u;
  return variant_ == Variant::kB ? 0.0 : speed_ + 1.0;
}

AsymptoticFamily::Blocks AsymptoticFamily::blocks(double x, double t) const {
  Blocks b;
  if (constant_) {
    b.U = {data_.left.u, 0.0};
    b.V = {data_.left.v, 0.0};
    return b;
  }
  const double z = (x - centre(t)) / eps_;
  b.U = three_level(z, data_.left.u, u_plateau(), data_.right.u);
  b.V = three_level(z, data_.left.v, 0.0, data_.right.v);
  if (std::abs(z) >= 5.0) return b;
  const double inv = 1.0 / eps_;
  b.delta = inv * (Mollifier::rho(z - 4.0) + Mollifier::rho(z + 4.0));
  b.delta_z = inv * (Mollifier::drho(z - 4.0) + Mollifier::drho(z + 4.0));
  b.rr = inv * (Mollifier::rho(z - 2.0) - Mollifier::rho(z + 2.0));
  b.rr_z = inv * (Mollifier::drho(z - 2.0) - Mollifier::drho(z + 2.0));
  if (variant_ == Variant::kB) {
    const double s = 1.0 / std::sqrt(eps_);
    if (r2_ == R2Profile::kCentered) {
      b.r2 = s * Mollifier::sqrt_rho(z);
      b.r2_z = s * Mollifier::dsqrt_rho(z);
    } else {
      b.r2 = s * (Mollifier::sqrt_rho(2.0 * z - 1.0) - Mollifier::sqrt_rho(2.0 * z + 1.0));
      b.r2_z = s * 2.0 * (Mollifier::dsqrt_rho(2.0 * z - 1.0) - Mollifier::dsqrt_rho(2.0 * z + 1.0));
    }
  }
  return b;
}

double AsymptoticFamily::U(double x, double t) const { return blocks(x, t).U.value; }
double AsymptoticFamily::V(double x, double t) const { return blocks(x, t).V.value; }
double AsymptoticFamily::delta(double x, double t) const { return blocks(x, t).delta; }
Complex AsymptoticFamily::R(double x, double t) const { return {0.0, blocks(x, t).rr}; }
double AsymptoticFamily::R2(double x, double t) const { return blocks(x, t).r2; }

Complex AsymptoticFamily::b(double t) const {
  if (variant_ != Variant::kB) return 0.0;
  return std::sqrt(Complex(2.0 * speed_ * rate_ * t, 0.0));
}

AsymptoticFamily::Jet AsymptoticFamily::u(double x, double t) const {
  const Blocks bl = blocks(x, t);
  const double inv = 1.0 / eps_;
  Jet j{bl.U.value, inv * bl.U.dz, 0.0};
  Complex own_dt = 0.0;  // time derivative of the coefficients
  if (variant_ == Variant::kB && !constant_) {
    const Complex sing(bl.delta, bl.rr);
    const Complex sing_z(bl.delta_z, bl.rr_z);
    const double at = a(t);
    const Complex bt = b(t);
    Complex db = 0.0;
    if (speed_ * rate_ != 0.0) {
      if (t <= 0.0) {
        throw Error(Errc::kDomainError, "variant B: sqrt(2 c A(t)) is not differentiable at t = 0");
      }
      db = speed_ * rate_ / bt;
    }
    j.value += at * sing + bt * bl.r2;
    j.dx += inv * (at * sing_z + bt * bl.r2_z);
    own_dt = 0.5 * rate_ * sing + db * bl.r2;
  }
  j.dt = -speed_ * j.dx + own_dt;
  return j;
}

AsymptoticFamily::Jet AsymptoticFamily::v(double x, double t) const {
  const Blocks bl = blocks(x, t);
  const double inv = 1.0 / eps_;
  Jet j{bl.V.value, inv * bl.V.dz, 0.0};
  Complex own_dt = 0.0;
  if (variant_ != Variant::kB && !constant_) {
    const Complex sing(bl.delta, bl.rr);
    const Complex sing_z(bl.delta_z, bl.rr_z);
    j.value += a(t) * sing;
    j.dx += inv * a(t) * sing_z;
    own_dt = 0.5 * rate_ * sing;
  }
  j.dt = -speed_ * j.dx + own_dt;
  return j;
}

AsymptoticFamily build_family_a(const RiemannData& data, double eps) {
  const auto spec = gendelta::delta_shock_carrier_v(brio(), data);
  return {Variant::kA, data, spec.speed, spec.amplitude_rate, eps};
}

AsymptoticFamily build_family_b(const RiemannData& data, double eps, R2Profile r2) {
  const auto spec = gendelta::delta_shock_carrier_u(brio(), data);
  return {Variant::kB, data, spec.speed, spec.amplitude_rate, eps, r2};
}

AsymptoticFamily build_family_corollary(const RiemannData& data, double speed, double eps) {
  const State& l = data.left;
  const State& r = data.right;
  if (l.u != r.u || l.v * l.v != r.v * r.v) {
    throw Error(Errc::kPrecondition, "corollary family needs u1 = u2 and v1^2 = v2^2");
  }
  if (l.v == 0.0 && r.v == 0.0) return AsymptoticFamily::constant(l, eps);
  const auto spec = gendelta::delta_shock_with_speed(brio(), data, Carrier::kV, speed);
  return {Variant::kCorollary, data, speed, spec.amplitude_rate, eps};
}

AsymptoticFamily build_family_corollary(double u, double vbar, double speed, double eps) {
  return build_family_corollary(RiemannData({u, vbar}, {u, -vbar}), speed, eps);
}

namespace {

struct Pieces {
  double left_lo, left_hi;    // constant left state
  double band_lo, band_hi;    // numerical band
  double right_lo, right_hi;  // constant right state
  double grid_origin;         // panel grid anchor
};

Pieces split_support(const AsymptoticFamily& fam, double xa, double xb, double t) {
  Pieces p;
  const double c = fam.centre(t);
  const double w = fam.is_constant() ? 0.0 : kBand * fam.eps();
  const double lo = c - w, hi = c + w;
  p.grid_origin = lo;
  p.left_lo = xa;
  p.left_hi = std::min(xb, lo);
  p.band_lo = std::max(xa, lo);
  p.band_hi = std::min(xb, hi);
  p.right_lo = std::max(xa, hi);
  p.right_hi = xb;
  return p;
}

// Integrates f over [a, b] on panels aligned with the grid origin + k h.
template <typename F>
auto banded(F&& f, double a, double b, double origin, double h, int order) -> decltype(f(a)) {
  using R = decltype(f(a));
  R sum{};
  if (!(b > a)) return sum;
  const long k0 = static_cast<long>(std::floor((a - origin) / h));
  const long k1 = static_cast<long>(std::ceil((b - origin) / h));
  for (long k = k0; k < k1; ++k) {
    const double lo = std::max(a, origin + k * h);
    const double hi = std::min(b, origin + (k + 1) * h);
    if (hi > lo) sum += integrate(f, lo, hi, 1, order);
  }
  return sum;
}

// Both equations summed in one quadrature pass.
struct Pair2 {
  Complex a, b;
  Pair2& operator+=(const Pair2& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
};
Pair2 operator*(double s, const Pair2& q) { return {s * q.a, s * q.b}; }

void check_eq(int eq) {
  if (eq != 1 && eq != 2) {
    throw Error(Errc::kInvalidInput, "equation index must be 1 or 2, got " + std::to_string(eq));
  }
}

}  // namespace

std::array<Complex, 2> residual_pairings(const AsymptoticFamily& fam,
                                         const SpatialTestFunction& phi, double t,
                                         const PairingOptions& opt) {
  if (!(t >= 0.0)) throw Error(Errc::kInvalidInput, "residual_pairing: needs t >= 0");
  const Pieces p = split_support(fam, phi.x_min(), phi.x_max(), t);
  std::array<Complex, 2> out{0.0, 0.0};
  // constant regions: d/dt q = 0 and -int F phi' = -F (phi(b) - phi(a))
  auto outer = [&](const State& s, double a, double b) {
    if (!(b > a)) return;
    const auto [f, g] = brio()(s);
    const double dphi = phi(b) - phi(a);
    out[0] -= f * dphi;
    out[1] -= g * dphi;
  };
  outer(fam.data().left, p.left_lo, p.left_hi);
  outer(fam.data().right, p.right_lo, p.right_hi);

  auto integrand = [&](double x) {
    const auto u = fam.u(x, t);
    const auto v = fam.v(x, t);
    const Complex f = 0.5 * (u.value * u.value + v.value * v.value);
    const Complex g = v.value * (u.value - 1.0);
    const double ph = phi(x);
    const double dph = phi.dx(x);
    return Pair2{u.dt * ph - f * dph, v.dt * ph - g * dph};
  };
  const double h = fam.eps() / opt.panels_per_eps;
  const Pair2 band = banded(integrand, p.band_lo, p.band_hi, p.grid_origin, h, opt.order);
  out[0] += band.a;
  out[1] += band.b;
  if (!std::isfinite(std::abs(out[0])) || !std::isfinite(std::abs(out[1]))) {
    throw Error(Errc::kQuadrature, "residual_pairing: non-finite result");
  }
  return out;
}

Complex residual_pairing(const AsymptoticFamily& fam, int eq, const SpatialTestFunction& phi,
                         double t, const PairingOptions& opt) {
  check_eq(eq);
  return residual_pairings(fam, phi, t, opt)[eq - 1];
}

std::array<Complex, 2> state_pairings(const AsymptoticFamily& fam, const SpatialTestFunction& phi,
                                      double t, const PairingOptions& opt) {
  const Pieces p = split_support(fam, phi.x_min(), phi.x_max(), t);
  std::array<Complex, 2> out{0.0, 0.0};
  auto outer = [&](const State& s, double a, double b) {
    if (!(b > a)) return;
    const double m = integrate([&](double x) { return phi(x); }, a, b, 32, opt.order);
    out[0] += s.u * m;
    out[1] += s.v * m;
  };
  outer(fam.data().left, p.left_lo, p.left_hi);
  outer(fam.data().right, p.right_lo, p.right_hi);
  auto integrand = [&](double x) {
    const double ph = phi(x);
    return Pair2{fam.u(x, t).value * ph, fam.v(x, t).value * ph};
  };
  const double h = fam.eps() / opt.panels_per_eps;
  const Pair2 band = banded(integrand, p.band_lo, p.band_hi, p.grid_origin, h, opt.order);
  out[0] += band.a;
  out[1] += band.b;
  return out;
}

std::vector<double> dyadic_grid(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<double> time_grid(double T, int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(T * k / n);
  return out;
}

std::vector<SpatialTestFunction> spatial_battery(double x0, double c,
                                                 std::span<const double> radii) {
  std::vector<SpatialTestFunction> out;
  const double centres[] = {x0, x0 + 0.5 * c, x0 + c};
  const char* names[] = {"x0", "xmid", "x1"};
  for (double r : radii) {
    if (!(r > 0.0)) throw Error(Errc::kInvalidInput, "spatial_battery: radii must be positive");
    char tag[32];
    std::snprintf(tag, sizeof tag, "_r%g", r);
    for (int k = 0; k < 3; ++k) out.emplace_back(centres[k], r, std::string(names[k]) + tag);
  }
  return out;
}

std::pair<double, double> loglog_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw Error(Errc::kInvalidInput, "loglog_fit: needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

namespace {

template <typename Task>
void run_parallel(std::size_t n, int jobs, Task&& task) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      if (failed) return;
      try {
        task(k);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

void require_decreasing(std::span<const double> eps) {
  if (eps.size() < 2) throw Error(Errc::kInvalidInput, "eps grid needs at least two values");
  for (std::size_t k = 1; k < eps.size(); ++k) {
    if (!(eps[k] < eps[k - 1]) || !(eps[k] > 0.0)) {
      throw Error(Errc::kInvalidInput, "eps grid must be positive and strictly decreasing");
    }
  }
}

}  // namespace

double DecayReport::min_slope() const {
  double m = std::numeric_limits<double>::infinity();
  for (const DecaySeries& s : series) {
    if (!s.negligible) m = std::min(m, s.slope);
  }
  return m;
}

CsvTable DecayReport::to_csv() const {
  CsvTable t({"variant", "eq", "phi_id", "eps", "sup_t_abs_pairing", "slope"});
  for (const DecaySeries& s : series) {
    for (std::size_t k = 0; k < eps.size(); ++k) {
      t.add_row({variant, static_cast<long long>(s.eq), s.phi_id, eps[k], s.sup[k], s.slope});
    }
  }
  return t;
}

DecayReport decay_report(const std::string& label, const FamilyBuilder& build,
                         std::span<const SpatialTestFunction> battery,
                         std::span<const double> eps_grid, std::span<const double> times,
                         const DecayOptions& opt) {
  require_decreasing(eps_grid);
  if (battery.empty() || times.empty()) {
    throw Error(Errc::kInvalidInput, "decay_report: empty battery or time grid");
  }
  const std::size_t ne = eps_grid.size(), np = battery.size();
  // sup[(phi * ne + e) * 2 + eq]
  std::vector<double> sup(np * ne * 2, 0.0);
  run_parallel(np * ne, opt.jobs, [&](std::size_t task) {
    const std::size_t ip = task / ne, ie = task % ne;
    const AsymptoticFamily fam = build(eps_grid[ie]);
    double s1 = 0.0, s2 = 0.0;
    for (double t : times) {
      const auto r = residual_pairings(fam, battery[ip], t, opt.pairing);
      s1 = std::max(s1, std::abs(r[0]));
      s2 = std::max(s2, std::abs(r[1]));
    }
    sup[task * 2] = s1;
    sup[task * 2 + 1] = s2;
  });

  DecayReport rep;
  rep.variant = label;
  rep.eps.assign(eps_grid.begin(), eps_grid.end());
  rep.times.assign(times.begin(), times.end());
  rep.pass = true;
  for (int eq = 1; eq <= 2; ++eq) {
    for (std::size_t ip = 0; ip < np; ++ip) {
      DecaySeries s;
      s.eq = eq;
      s.phi_id = battery[ip].id();
      std::vector<double> clamped;
      for (std::size_t ie = 0; ie < ne; ++ie) {
        const double v = sup[(ip * ne + ie) * 2 + (eq - 1)];
        s.sup.push_back(v);
        clamped.push_back(std::max(v, opt.noise_floor));
      }
      s.negligible = std::all_of(s.sup.begin(), s.sup.end(),
                                 [&](double v) { return v <= opt.noise_floor; });
      std::tie(s.slope, s.intercept) = loglog_fit(rep.eps, clamped);
      s.monotone = true;
      for (std::size_t k = 1; k < ne; ++k) {
        if (clamped[k] > opt.monotone_slack * clamped[k - 1]) s.monotone = false;
      }
      s.pass = s.negligible || (s.slope >= opt.slope_min && s.monotone);
      rep.pass = rep.pass && s.pass;
      rep.series.push_back(std::move(s));
    }
  }
  return rep;
}

WeakLimitReport weak_limit_check(const FamilyBuilder& build, const SingularSolution& target,
                                 std::span<const SpatialTestFunction> battery,
                                 std::span<const double> eps_grid, std::span<const double> times,
                                 const PairingOptions& opt) {
  require_decreasing(eps_grid);
  // target pairings per (phi, t)
  std::vector<std::array<double, 2>> ref;
  for (const SpatialTestFunction& phi : battery) {
    for (double t : times) {
      const auto bp = target.background.breakpoints(t);
      std::vector<double> breaks(bp.begin(), bp.end());
      std::sort(breaks.begin(), breaks.end());
      auto qu = [&](double x) { return target.background.at(x, t).u * phi(x); };
      auto qv = [&](double x) { return target.background.at(x, t).v * phi(x); };
      double pu = integrate_split(qu, phi.x_min(), phi.x_max(), breaks, 32, opt.order);
      double pv = integrate_split(qv, phi.x_min(), phi.x_max(), breaks, 32, opt.order);
      for (const Arc& arc : target.graph.arcs) {
        if (t < arc.start_time() || t > arc.end_time()) continue;
        const double at = phi(arc.position(t));
        if (target.carrier == Carrier::kU || target.carrier == Carrier::kBoth) {
          pu += arc.amplitude(t) * at;
        }
        if (target.carrier == Carrier::kV) pv += arc.amplitude(t) * at;
        if (target.carrier == Carrier::kBoth) pv += arc.amplitude2(t) * at;
      }
      ref.push_back({pu, pv});
    }
  }
  WeakLimitReport rep;
  rep.eps.assign(eps_grid.begin(), eps_grid.end());
  for (double eps : eps_grid) {
    const AsymptoticFamily fam = build(eps);
    double eu = 0.0, ev = 0.0, im = 0.0;
    std::size_t k = 0;
    for (const SpatialTestFunction& phi : battery) {
      for (double t : times) {
        const auto p = state_pairings(fam, phi, t, opt);
        eu = std::max(eu, std::abs(p[0] - ref[k][0]));
        ev = std::max(ev, std::abs(p[1] - ref[k][1]));
        im = std::max({im, std::abs(p[0].imag()), std::abs(p[1].imag())});
        ++k;
      }
    }
    rep.err_u.push_back(eu);
    rep.err_v.push_back(ev);
    rep.imag.push_back(im);
  }
  auto slope = [&](const std::vector<double>& y) {
    std::vector<double> c;
    for (double v : y) c.push_back(std::max(v, 1e-300));
    return loglog_fit(rep.eps, c).first;
  };
  rep.slope_u = slope(rep.err_u);
  rep.slope_v = slope(rep.err_v);
  rep.slope_imag = slope(rep.imag);
  return rep;
}

}  // namespace dshock::asymptotics
