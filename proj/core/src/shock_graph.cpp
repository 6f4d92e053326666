#include "dshock/shock_graph.hpp"

#include <cmath>
#include <utility>

#include "dshock/error.hpp"

namespace dshock {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }

}  // namespace

Arc::Arc(std::vector<ArcPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(Errc::kInvalidInput, "arc without pieces");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const ArcPiece& p = pieces_[k];
    if (!(p.t_begin >= 0.0) || !(p.t_end > p.t_begin) || !std::isfinite(p.speed) ||
        !std::isfinite(p.x_begin) || !std::isfinite(p.amp_rate) || !std::isfinite(p.amp2_rate)) {
      throw Error(Errc::kInvalidInput, "arc piece must satisfy 0 <= t_begin < t_end with finite data");
    }
    if (k + 1 < pieces_.size()) {
      const ArcPiece& q = pieces_[k + 1];
      if (!close(p.t_end, q.t_begin) || !close(p.position(p.t_end), q.x_begin) ||
          !close(p.amplitude(p.t_end), q.amp_begin) ||
          !close(p.amplitude2(p.t_end), q.amp2_begin)) {
        throw Error(Errc::kInvalidInput, "arc pieces are not continuous");
      }
    }
  }
}

Arc Arc::straight(double x0, double t0, double speed, double amp0, double amp_rate,
                  double amp2_0, double amp2_rate) {
  ArcPiece p;
  p.t_begin = t0;
  p.x_begin = x0;
  p.speed = speed;
  p.amp_begin = amp0;
  p.amp_rate = amp_rate;
  p.amp2_begin = amp2_0;
  p.amp2_rate = amp2_rate;
  return Arc({p});
}

const ArcPiece& Arc::piece_at(double t) const {
  for (const auto& p : pieces_) {
    if (t <= p.t_end) return p;
  }
  return pieces_.back();
}

double Arc::position(double t) const { return piece_at(t).position(t); }
double Arc::amplitude(double t) const { return piece_at(t).amplitude(t); }
double Arc::amplitude2(double t) const { return piece_at(t).amplitude2(t); }

std::vector<std::size_t> ShockGraph::initial_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    if (arcs[k].touches_axis()) out.push_back(k);
  }
  return out;
}

}  // namespace dshock
