#include "dshock/wave_fan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dshock/error.hpp"

namespace dshock {

std::string to_string(Carrier c) {
  switch (c) {
    case Carrier::kU: return "u";
    case Carrier::kV: return "v";
    case Carrier::kBoth: return "both";
  }
  return "?";
}

std::string to_string(WaveType t) {
  switch (t) {
    case WaveType::kShock: return "shock";
    case WaveType::kRarefaction: return "rarefaction";
    case WaveType::kDeltaShock: return "delta";
  }
  return "?";
}

bool WaveFan::has_delta() const {
  return std::any_of(waves.begin(), waves.end(),
                     [](const ElementaryWave& w) { return w.type == WaveType::kDeltaShock; });
}

double rankine_hugoniot_residual(const FluxPair& flux, const State& l, const State& r,
                                 double sigma) {
  const auto [fl, gl] = flux(l);
  const auto [fr, gr] = flux(r);
  return std::max(std::abs(sigma * (r.u - l.u) - (fr - fl)),
                  std::abs(sigma * (r.v - l.v) - (gr - gl)));
}

void check_fan(const WaveFan& fan, const FluxPair& flux, const FanCheckOptions& opt) {
  auto fail = [](const std::string& msg) { throw Error(Errc::kOrderingViolation, msg); };
  if (fan.waves.empty()) {
    if (!(fan.left == fan.right)) fail("empty fan between distinct states");
    return;
  }
  if (!(fan.waves.front().left == fan.left)) fail("first wave does not start at the left state");
  if (!(fan.waves.back().right == fan.right)) fail("last wave does not end at the right state");
  double last_speed = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < fan.waves.size(); ++k) {
    const ElementaryWave& w = fan.waves[k];
    std::ostringstream where;
    where << "wave " << k << " (" << to_string(w.type) << ")";
    if (k > 0 && !(fan.waves[k - 1].right == w.left)) fail(where.str() + ": adjacent states differ");
    if (w.speed_lo > w.speed_hi + opt.speed_tol) fail(where.str() + ": decreasing speed range");
    if (w.speed_lo < last_speed - opt.speed_tol) {
      std::ostringstream msg;
      msg << where.str() << ": speed " << w.speed_lo << " below preceding speed " << last_speed;
      fail(msg.str());
    }
    if (w.type == WaveType::kShock) {
      const double res = rankine_hugoniot_residual(flux, w.left, w.right, w.speed_lo);
      if (res > opt.rh_tol) {
        std::ostringstream msg;
        msg << where.str() << ": Rankine-Hugoniot residual " << res;
        fail(msg.str());
      }
    }
    if (w.type == WaveType::kRarefaction && !w.state_at_speed) {
      fail(where.str() + ": rarefaction without a profile");
    }
    last_speed = w.speed_hi;
  }
}

}  // namespace dshock
