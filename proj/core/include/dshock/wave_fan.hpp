#ifndef DSHOCK_WAVE_FAN_HPP_
#define DSHOCK_WAVE_FAN_HPP_

#include <functional>
#include <string>
#include <vector>

#include "dshock/flux.hpp"
#include "dshock/state.hpp"

namespace dshock {

enum class Carrier { kU, kV, kBoth };

enum class WaveType { kShock, kRarefaction, kDeltaShock };

std::string to_string(Carrier c);
std::string to_string(WaveType t);

struct ElementaryWave {
  WaveType type = WaveType::kShock;
  int family = 0;  // 1 or 2 for classical waves, 0 for delta shocks
  State left;
  State right;
  double speed_lo = 0.0;  // equal to speed_hi except for rarefactions
  double speed_hi = 0.0;
  Carrier carrier = Carrier::kU;  // delta shocks only
  double amplitude_rate = 0.0;    // delta shocks only; alpha(t) = rate * t

  // Rarefactions: state as a function of the self-similar coordinate x/t on
  // [speed_lo, speed_hi].
  std::function<State(double)> state_at_speed;

  double speed() const { return speed_lo; }
};

// Ordered sequence of elementary waves issuing from one point.
struct WaveFan {
  State left;
  State right;
  std::vector<ElementaryWave> waves;

  bool empty() const { return waves.empty(); }
  bool has_delta() const;
};

struct FanCheckOptions {
  double speed_tol = 1e-10;
  double rh_tol = 1e-8;
};

// Verifies adjacency (exact), end states, speed monotonicity and the
// Rankine-Hugoniot relations of classical shocks. Throws kOrderingViolation
// with a diagnostic message on failure.
void check_fan(const WaveFan& fan, const FluxPair& flux, const FanCheckOptions& opt = {});

// max(|sigma [u] - [f]|, |sigma [v] - [g]|)
double rankine_hugoniot_residual(const FluxPair& flux, const State& l, const State& r,
                                 double sigma);

}  // namespace dshock

#endif  // DSHOCK_WAVE_FAN_HPP_
