#ifndef DSHOCK_WEAKFORM_HPP_
#define DSHOCK_WEAKFORM_HPP_

#include <span>
#include <string>
#include <vector>

#include "dshock/csv.hpp"
#include "dshock/flux.hpp"
#include "dshock/singular_solution.hpp"
#include "dshock/test_function.hpp"

namespace dshock::weakform {

// Tensor Gauss-Legendre on cells split along every background discontinuity
// and along t = 0. `panels` equal panels per cell and direction.
struct QuadratureOptions {
  int order = 16;
  int panels = 12;
  // Re-evaluate with doubled panels and report the difference.
  bool estimate_error = true;
};

struct Residual {
  double r1 = 0.0;
  double r2 = 0.0;
  double error_estimate = 0.0;  // max change under panel doubling
};

enum class AmplitudeSlot { kFirst, kSecond };

// Integral of alpha(t) d/dt[phi(x(t), t)] along the arc, with
// d/dt phi(x(t), t) = phi_t + x'(t) phi_x.
double tangential_term(const Arc& arc, const TestFunction& phi,
                       AmplitudeSlot slot = AmplitudeSlot::kFirst,
                       const QuadratureOptions& opt = {});

// Left-hand sides of the two weak identities with the Dirac terms attached to
// the equation of the carrier.
Residual residual_carrier_v(const FluxPair& flux, const SingularSolution& sol,
                            const TestFunction& phi, const QuadratureOptions& opt = {});
Residual residual_carrier_u(const FluxPair& flux, const SingularSolution& sol,
                            const TestFunction& phi, const QuadratureOptions& opt = {});
// amplitude -> first identity, amplitude2 -> second identity.
Residual residual_two_sided(const FluxPair& flux, const SingularSolution& sol,
                            const TestFunction& phi, const QuadratureOptions& opt = {});

// Dispatches on sol.carrier.
Residual residual(const FluxPair& flux, const SingularSolution& sol, const TestFunction& phi,
                  const QuadratureOptions& opt = {});

struct VerifyEntry {
  std::string phi_id;
  double r1 = 0.0;
  double r2 = 0.0;
  double error_estimate = 0.0;
  bool pass = false;
};

struct VerifyReport {
  double tol = 0.0;
  double max_residual = 0.0;
  double max_error_estimate = 0.0;
  // Quadrature is considered converged when panel doubling changes every
  // residual by less than 10% of tol.
  bool converged = true;
  bool pass = false;
  std::vector<VerifyEntry> entries;

  CsvTable to_csv() const;  // phi_id, r1, r2, pass
};

// Throws kInvalidInput for an empty battery. Battery members are evaluated on
// up to `jobs` threads.
VerifyReport verify(const FluxPair& flux, const SingularSolution& sol,
                    std::span<const TestFunction> battery, double tol,
                    const QuadratureOptions& opt = {}, int jobs = 1);

// Products of bumps centred on a 3 x 2 grid: t0 = 0 with x0 near the origin
// and t0 = 1 with x0 at origin + {s_lo, (s_lo+s_hi)/2, s_hi}; one member per
// centre and radius (rx = rt = r).
std::vector<TestFunction> make_battery(double origin, double s_lo, double s_hi,
                                       std::span<const double> radii);

// make_battery with radii {0.5, 1, 2} and the speed range of the solution's
// background edges and arcs.
std::vector<TestFunction> standard_battery(const SingularSolution& sol);

}  // namespace dshock::weakform

#endif  // DSHOCK_WEAKFORM_HPP_
