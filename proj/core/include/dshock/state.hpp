#ifndef DSHOCK_STATE_HPP_
#define DSHOCK_STATE_HPP_

#include <cmath>

#include "dshock/error.hpp"

namespace dshock {

// Constant state of the 2x2 system (u, v).
struct State {
  double u = 0.0;
  double v = 0.0;

  constexpr State() = default;
  constexpr State(double u_in, double v_in) : u(u_in), v(v_in) {}

  bool finite() const { return std::isfinite(u) && std::isfinite(v); }
  friend constexpr bool operator==(const State&, const State&) = default;
};

// Left/right pair of a Riemann problem with the jump placed at jump_location.
struct RiemannData {
  State left;
  State right;
  double jump_location = 0.0;

  RiemannData() = default;
  RiemannData(State l, State r, double x0 = 0.0)
      : left(l), right(r), jump_location(x0) {
    if (!l.finite() || !r.finite() || !std::isfinite(x0)) {
      throw Error(Errc::kInvalidInput, "Riemann data must be finite");
    }
  }

  double du() const { return right.u - left.u; }
  double dv() const { return right.v - left.v; }
};

}  // namespace dshock

#endif  // DSHOCK_STATE_HPP_
