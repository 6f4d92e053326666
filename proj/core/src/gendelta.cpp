#include "dshock/gendelta.hpp"

#include <string>

#include "dshock/error.hpp"

namespace dshock::gendelta {

namespace {

struct Jumps {
  double du, dv, df, dg;
};

Jumps jumps(const FluxPair& flux, const RiemannData& data) {
  const auto [fl, gl] = flux(data.left);
  const auto [fr, gr] = flux(data.right);
  return {data.du(), data.dv(), fr - fl, gr - gl};
}

}  // namespace

SingularSolution DeltaShockSpec::solution() const {
  SingularSolution sol;
  sol.carrier = carrier;
  sol.background = Profile::translated_riemann(data, speed);
  sol.graph.arcs.push_back(Arc::straight(data.jump_location, 0.0, speed, 0.0, amplitude_rate));
  return sol;
}

DeltaShockSpec delta_shock_with_speed(const FluxPair& flux, const RiemannData& data,
                                      Carrier carrier, double speed) {
  if (carrier == Carrier::kBoth) {
    throw Error(Errc::kInvalidInput, "delta_shock_with_speed: carrier must be u or v");
  }
  const Jumps j = jumps(flux, data);
  DeltaShockSpec spec;
  spec.carrier = carrier;
  spec.speed = speed;
  spec.data = data;
  spec.amplitude_rate = carrier == Carrier::kV ? speed * j.dv - j.dg : speed * j.du - j.df;
  return spec;
}

DeltaShockSpec delta_shock_carrier_v(const FluxPair& flux, const RiemannData& data) {
  if (data.left.u == data.right.u) {
    throw Error(Errc::kDegenerateJump, "carrier v needs u1 != u2 (u1 = u2 = " +
                                           std::to_string(data.left.u) + ")");
  }
  const Jumps j = jumps(flux, data);
  return delta_shock_with_speed(flux, data, Carrier::kV, j.df / j.du);
}

DeltaShockSpec delta_shock_carrier_u(const FluxPair& flux, const RiemannData& data) {
  if (data.left.v == data.right.v) {
    throw Error(Errc::kDegenerateJump, "carrier u needs v1 != v2 (v1 = v2 = " +
                                           std::to_string(data.left.v) + ")");
  }
  const Jumps j = jumps(flux, data);
  return delta_shock_with_speed(flux, data, Carrier::kU, j.dg / j.dv);
}

SingularSolution nonuniqueness_pair(double beta, double c1, double c2) {
  SingularSolution sol;
  sol.carrier = Carrier::kV;
  sol.background = Profile::constant({0.0, 0.0});
  sol.graph.arcs.push_back(Arc::straight(0.0, 0.0, c1, beta, 0.0));
  sol.graph.arcs.push_back(Arc::straight(0.0, 0.0, c2, -beta, 0.0));
  return sol;
}

}  // namespace dshock::gendelta
