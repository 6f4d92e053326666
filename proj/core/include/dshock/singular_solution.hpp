#ifndef DSHOCK_SINGULAR_SOLUTION_HPP_
#define DSHOCK_SINGULAR_SOLUTION_HPP_

#include "dshock/profile.hpp"
#include "dshock/shock_graph.hpp"
#include "dshock/wave_fan.hpp"

namespace dshock {

// Bounded background plus Dirac masses carried by the arcs of `graph`.
// For carrier kBoth the second unknown's amplitudes are the arcs' amplitude2.
struct SingularSolution {
  Carrier carrier = Carrier::kV;
  Profile background = Profile::constant({});
  ShockGraph graph;

  // Assembles the fan's background and one straight arc per delta wave.
  // Throws kInvalidInput if the delta waves use different carriers.
  static SingularSolution from_fan(const WaveFan& fan, double origin = 0.0);
};

}  // namespace dshock

#endif  // DSHOCK_SINGULAR_SOLUTION_HPP_
