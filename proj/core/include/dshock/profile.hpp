#ifndef DSHOCK_PROFILE_HPP_
#define DSHOCK_PROFILE_HPP_

#include <functional>
#include <vector>

#include "dshock/state.hpp"
#include "dshock/wave_fan.hpp"

namespace dshock {

// Self-similar, piecewise smooth background centered at (origin, 0): regions
// separated by rays x = origin + edge_k t. Each region is either a constant
// state or a smooth function of the similarity variable (rarefaction).
class Profile {
 public:
  struct Region {
    State constant;
    std::function<State(double)> smooth;  // empty for constant regions
  };

  static Profile constant(const State& s);
  // U0(x - x0 - c t), V0(x - x0 - c t)
  static Profile translated_riemann(const RiemannData& data, double speed);
  static Profile from_fan(const WaveFan& fan, double origin = 0.0);

  // Background value at t > 0; at t = 0 the initial data.
  State at(double x, double t) const;
  State initial(double x) const;
  // True inside a rarefaction region (t > 0).
  bool smooth_at(double x, double t) const;

  // Discontinuity or kink locations at time t (t > 0), ascending.
  std::vector<double> breakpoints(double t) const;

  double origin() const { return origin_; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<Region>& regions() const { return regions_; }

 private:
  Profile() = default;
  double origin_ = 0.0;
  std::vector<double> edges_;    // nondecreasing speeds
  std::vector<Region> regions_;  // edges_.size() + 1 entries
};

}  // namespace dshock

#endif  // DSHOCK_PROFILE_HPP_
