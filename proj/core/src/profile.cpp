#include "dshock/profile.hpp"

#include <algorithm>

#include "dshock/error.hpp"

namespace dshock {

Profile Profile::constant(const State& s) {
  Profile p;
  p.regions_.push_back({s, {}});
  return p;
}

Profile Profile::translated_riemann(const RiemannData& data, double speed) {
  Profile p;
  p.origin_ = data.jump_location;
  p.edges_ = {speed};
  p.regions_ = {{data.left, {}}, {data.right, {}}};
  return p;
}

Profile Profile::from_fan(const WaveFan& fan, double origin) {
  Profile p;
  p.origin_ = origin;
  p.regions_.push_back({fan.left, {}});
  for (const ElementaryWave& w : fan.waves) {
    if (w.type == WaveType::kRarefaction) {
      p.edges_.push_back(w.speed_lo);
      p.regions_.push_back({w.left, w.state_at_speed});
      p.edges_.push_back(w.speed_hi);
    } else {
      p.edges_.push_back(w.speed_lo);
    }
    p.regions_.push_back({w.right, {}});
  }
  for (std::size_t k = 1; k < p.edges_.size(); ++k) {
    if (p.edges_[k] < p.edges_[k - 1] - 1e-10) {
      throw Error(Errc::kOrderingViolation, "profile edges are not ordered");
    }
    p.edges_[k] = std::max(p.edges_[k], p.edges_[k - 1]);
  }
  return p;
}

State Profile::at(double x, double t) const {
  if (t <= 0.0) return initial(x);
  const double xi = (x - origin_) / t;
  const auto k = static_cast<std::size_t>(
      std::upper_bound(edges_.begin(), edges_.end(), xi) - edges_.begin());
  const Region& r = regions_[k];
  return r.smooth ? r.smooth(xi) : r.constant;
}

bool Profile::smooth_at(double x, double t) const {
  if (t <= 0.0) return false;
  const double xi = (x - origin_) / t;
  const auto k = static_cast<std::size_t>(
      std::upper_bound(edges_.begin(), edges_.end(), xi) - edges_.begin());
  return static_cast<bool>(regions_[k].smooth);
}

State Profile::initial(double x) const {
  return x < origin_ ? regions_.front().constant : regions_.back().constant;
}

std::vector<double> Profile::breakpoints(double t) const {
  std::vector<double> out;
  out.reserve(edges_.size());
  for (double e : edges_) out.push_back(origin_ + e * t);
  return out;
}

}  // namespace dshock
