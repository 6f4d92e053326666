#ifndef DSHOCK_ASYMPTOTICS_HPP_
#define DSHOCK_ASYMPTOTICS_HPP_

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dshock/csv.hpp"
#include "dshock/flux.hpp"
#include "dshock/singular_solution.hpp"
#include "dshock/state.hpp"
#include "dshock/test_function.hpp"

namespace dshock::asymptotics {

// A: Dirac mass in v, u_eps = U_eps with middle plateau c + 1.
// B: Dirac mass in u plus the square-root correction, middle plateaus 0.
// Corollary: A with a caller-chosen speed for u1 = u2, v1^2 = v2^2.
enum class Variant { kA, kB, kCorollary };
std::string to_string(Variant v);

// Profile of the centred variant-B correction R2 = eps^{-1/2} psi(y/eps).
// kCentered: psi = sqrt(rho). kOddPair: psi(z) = sqrt(rho(2z-1)) -
// sqrt(rho(2z+1)), which has the same unit mass of psi^2 but zero mean.
enum class R2Profile { kCentered, kOddPair };
std::string to_string(R2Profile p);

// Smooth family travelling with speed c. With y = x - x0 - c t, z = y/eps:
//   delta_eps = (rho(z - 4) + rho(z + 4))/eps                  (mass 2)
//   R_eps     = i (rho(z - 2) - rho(z + 2))/eps                (mass 0)
//   U_eps, V_eps: left state for z < -20, plateau for |z| < 10, right state
//                 for z > 20, smooth ramps in between.
// The Dirac coefficient is a(t) = A(t)/2 with A(t) = amplitude_rate * t the
// target singular mass, so that a (delta_eps + R_eps) tends to A delta.
// Variant B adds b(t) R2 with b(t) = sqrt(2 c A(t)) (principal branch).
class AsymptoticFamily {
 public:
  AsymptoticFamily(Variant variant, const RiemannData& data, double speed, double amplitude_rate,
                   double eps, R2Profile r2 = R2Profile::kCentered);
  // u = s.u, v = s.v everywhere.
  static AsymptoticFamily constant(const State& s, double eps);

  struct Jet {
    Complex value;
    Complex dx;
    Complex dt;
  };

  Variant variant() const { return variant_; }
  const RiemannData& data() const { return data_; }
  double speed() const { return speed_; }
  double amplitude_rate() const { return rate_; }
  double eps() const { return eps_; }
  R2Profile r2_profile() const { return r2_; }
  bool is_constant() const { return constant_; }

  double u_plateau() const;
  double v_plateau() const { return 0.0; }
  // Distance from the centre line beyond which the family is constant.
  double outer_halfwidth() const { return 20.0 * eps_; }
  double centre(double t) const { return data_.jump_location + speed_ * t; }

  // Building blocks at (x, t).
  double U(double x, double t) const;
  double V(double x, double t) const;
  double delta(double x, double t) const;
  Complex R(double x, double t) const;
  double R2(double x, double t) const;
  double a(double t) const { return 0.5 * rate_ * t; }
  Complex b(double t) const;

  // Values and analytic first derivatives. Variant B throws kDomainError at
  // t = 0, where b(t) is not differentiable.
  Jet u(double x, double t) const;
  Jet v(double x, double t) const;

 private:
  struct Blocks;
  Blocks blocks(double x, double t) const;

  Variant variant_;
  RiemannData data_;
  double speed_;
  double rate_;
  double eps_;
  R2Profile r2_;
  bool constant_ = false;
};

// Speed and rate from the carrier-v constructor. Throws kDegenerateJump for
// u1 == u2.
AsymptoticFamily build_family_a(const RiemannData& data, double eps);
// Speed and rate from the carrier-u constructor. Throws kDegenerateJump for
// v1 == v2.
AsymptoticFamily build_family_b(const RiemannData& data, double eps,
                                R2Profile r2 = R2Profile::kCentered);
// Requires u1 == u2 and v1^2 == v2^2 (kPrecondition). Rate c[v] - [g]; the
// family is constant when v1 = v2 = 0.
AsymptoticFamily build_family_corollary(const RiemannData& data, double speed, double eps);
AsymptoticFamily build_family_corollary(double u, double vbar, double speed, double eps);

struct PairingOptions {
  // Gauss panels per eps inside |y| <= 30 eps, nodes per panel.
  int panels_per_eps = 4;
  int order = 8;
};

// int d/dt(q_eps) phi dx - int F(u_eps, v_eps) phi' dx for equation 1
// (q = u, F = f) or 2 (q = v, F = g) of the Brio system.
Complex residual_pairing(const AsymptoticFamily& fam, int eq, const SpatialTestFunction& phi,
                         double t, const PairingOptions& opt = {});
// Both equations at once.
std::array<Complex, 2> residual_pairings(const AsymptoticFamily& fam,
                                         const SpatialTestFunction& phi, double t,
                                         const PairingOptions& opt = {});

// <u_eps(., t), phi> and <v_eps(., t), phi>.
std::array<Complex, 2> state_pairings(const AsymptoticFamily& fam, const SpatialTestFunction& phi,
                                      double t, const PairingOptions& opt = {});

inline constexpr std::array<double, 2> kBatteryRadii{2.5, 5.0};

using FamilyBuilder = std::function<AsymptoticFamily(double eps)>;

struct DecaySeries {
  int eq = 1;
  std::string phi_id;
  std::vector<double> sup;  // per eps, sup over the t grid of |pairing|
  double slope = 0.0;
  double intercept = 0.0;
  bool monotone = false;
  bool negligible = false;  // every value below the noise floor
  bool pass = false;
};

struct DecayReport {
  std::string variant;
  std::vector<double> eps;     // strictly decreasing
  std::vector<double> times;
  std::vector<DecaySeries> series;
  bool pass = false;

  double min_slope() const;
  // variant, eq, phi_id, eps, sup_t_abs_pairing, slope
  CsvTable to_csv() const;
};

struct DecayOptions {
  double slope_min = 0.9;
  double noise_floor = 1e-12;
  // A value may exceed its predecessor by this factor and still count as
  // monotone.
  double monotone_slack = 1.05;
  PairingOptions pairing;
  int jobs = 1;
};

// eps = 2^{-lo}, ..., 2^{-hi}.
std::vector<double> dyadic_grid(int lo, int hi);
// t_k = k T / n, k = 1..n.
std::vector<double> time_grid(double T = 1.0, int n = 64);
// Bumps centred at x0 + {0, c/2, c} for each radius. The default smallest
// radius equals the full transition width 40 eps at eps = 1/16, so that the
// coarsest family of the standard grid already fits inside every support.
std::vector<SpatialTestFunction> spatial_battery(double x0, double c,
                                                 std::span<const double> radii = kBatteryRadii);

// Least-squares slope and intercept of log y against log x.
std::pair<double, double> loglog_fit(std::span<const double> x, std::span<const double> y);

DecayReport decay_report(const std::string& label, const FamilyBuilder& build,
                         std::span<const SpatialTestFunction> battery,
                         std::span<const double> eps_grid, std::span<const double> times,
                         const DecayOptions& opt = {});

struct WeakLimitReport {
  std::vector<double> eps;
  std::vector<double> err_u;   // sup over t, phi of |<u_eps, phi> - <u, phi>|
  std::vector<double> err_v;
  std::vector<double> imag;    // sup of |Im <u_eps, phi>|, |Im <v_eps, phi>|
  double slope_u = 0.0;
  double slope_v = 0.0;
  double slope_imag = 0.0;
};

// Compares pairings of the family with those of `target`, whose singular
// part contributes alpha(t) phi(x(t)) in its carrier.
WeakLimitReport weak_limit_check(const FamilyBuilder& build, const SingularSolution& target,
                                 std::span<const SpatialTestFunction> battery,
                                 std::span<const double> eps_grid, std::span<const double> times,
                                 const PairingOptions& opt = {});

}  // namespace dshock::asymptotics

#endif  // DSHOCK_ASYMPTOTICS_HPP_
