#include "dshock/singular_solution.hpp"

#include "dshock/error.hpp"

namespace dshock {

SingularSolution SingularSolution::from_fan(const WaveFan& fan, double origin) {
  SingularSolution sol;
  sol.background = Profile::from_fan(fan, origin);
  bool have_carrier = false;
  for (const ElementaryWave& w : fan.waves) {
    if (w.type != WaveType::kDeltaShock) continue;
    if (have_carrier && w.carrier != sol.carrier) {
      throw Error(Errc::kInvalidInput, "fan mixes delta shocks with different carriers");
    }
    sol.carrier = w.carrier;
    have_carrier = true;
    sol.graph.arcs.push_back(Arc::straight(origin, 0.0, w.speed_lo, 0.0, w.amplitude_rate));
  }
  return sol;
}

}  // namespace dshock
