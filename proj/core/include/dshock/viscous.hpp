#ifndef DSHOCK_VISCOUS_HPP_
#define DSHOCK_VISCOUS_HPP_

#include <vector>

#include "dshock/csv.hpp"
#include "dshock/flux.hpp"
#include "dshock/state.hpp"

namespace dshock::viscous {

// u_t + f_x = mu u_xx,  v_t + g_x = mu v_xx on [x0 - X, x0 + X], x0 the jump
// location of the data.
struct ViscousConfig {
  RiemannData data;
  double half_width = 4.0;
  int cells = 800;
  double mu = 0.05;
  double cfl = 0.4;
  double final_time = 1.0;
  int snapshots = 20;  // output times k T / snapshots, k = 0..snapshots
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct ViscousResult {
  ViscousConfig config;
  std::vector<double> x;  // cell centres
  double h = 0.0;
  std::vector<Snapshot> snapshots;
  long steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  double peclet = 0.0;  // max a h / mu over the run
  // |sum q h - (initial - boundary outflow)| / max(1, |initial|), worst step
  double drift_u = 0.0;
  double drift_v = 0.0;

  // t, x, u, v
  CsvTable snapshots_csv() const;
};

// Bound on the largest characteristic speed used for the boundary check.
double max_initial_speed(const FluxPair& flux, const RiemannData& data);

// Central conservative differencing with explicit diffusion, zero-gradient
// ghost cells and two-stage SSP Runge-Kutta. Throws kPrecondition when the
// config violates CFL <= 0.45, mu > 0, or the waves could reach the
// boundary; kInstability on NaN or blow-up, with the time and cell.
ViscousResult run(const FluxPair& flux, const ViscousConfig& config);

enum class Component { kU, kV };

struct ConcentrationSeries {
  double speed = 0.0;
  double halfwidth = 0.0;
  bool clipped = false;  // the window left the domain at some output time
  std::vector<double> times;
  std::vector<double> m_u;
  std::vector<double> m_v;
  // max |q - background| over the window; bounded peaks under mu -> 0 mean
  // the excess mass is spread out rather than concentrated
  std::vector<double> peak_u;
  std::vector<double> peak_v;
  // least-squares slopes over the second half of [0, T]
  double slope_u = 0.0;
  double slope_v = 0.0;

  // t, m_u, m_v, slope_u, slope_v, peak_u, peak_v
  CsvTable to_csv() const;
};

// max(10 sqrt(mu T), 50 h).
double default_window(const ViscousResult& r);

// Excess mass over the window centred on x0 + c t, relative to the data
// translated with speed c (exact cell averages of the step). A window that
// leaves the domain is clipped and flagged.
ConcentrationSeries concentration_mass(const ViscousResult& r, double speed, double halfwidth);

// Position of the level (q_L + q_R)/2 crossing, linearly interpolated, at each
// snapshot after t = 0; speed is the least-squares slope over the second
// half. Throws kInvalidInput if q_L == q_R.
struct FrontTrack {
  std::vector<double> times;
  std::vector<double> position;
  double speed = 0.0;
};
FrontTrack track_front(const ViscousResult& r, Component q);

}  // namespace dshock::viscous

#endif  // DSHOCK_VISCOUS_HPP_
