#ifndef DSHOCK_GENDELTA_HPP_
#define DSHOCK_GENDELTA_HPP_

#include "dshock/flux.hpp"
#include "dshock/singular_solution.hpp"
#include "dshock/state.hpp"

namespace dshock::gendelta {

// Single delta shock issuing from the jump of a Riemann problem: the
// background is the Riemann profile translated with `speed`, and the Dirac
// mass alpha(t) = amplitude_rate * t sits on x = x0 + speed t in `carrier`.
struct DeltaShockSpec {
  Carrier carrier = Carrier::kV;
  double speed = 0.0;
  double amplitude_rate = 0.0;
  RiemannData data;

  double amplitude(double t) const { return amplitude_rate * t; }
  SingularSolution solution() const;
};

// Mass in v. Speed from the first equation's Rankine-Hugoniot relation
// c = [f]/[u]; rate c[v] - [g]. Throws kDegenerateJump when u1 == u2.
DeltaShockSpec delta_shock_carrier_v(const FluxPair& flux, const RiemannData& data);

// Mass in u. Speed c = [g]/[v]; rate c[u] - [f]. Throws kDegenerateJump when
// v1 == v2.
DeltaShockSpec delta_shock_carrier_u(const FluxPair& flux, const RiemannData& data);

// Same amplitude formulas with a caller-chosen speed. Only a weak solution
// when the conjugate equation's jump condition holds for that speed (e.g.
// [u] = [f] = 0 for carrier v).
DeltaShockSpec delta_shock_with_speed(const FluxPair& flux, const RiemannData& data,
                                      Carrier carrier, double speed);

// Zero data solution  u = 0,  v = beta delta(x - c1 t) - beta delta(x - c2 t).
SingularSolution nonuniqueness_pair(double beta, double c1, double c2);

}  // namespace dshock::gendelta

#endif  // DSHOCK_GENDELTA_HPP_
