#ifndef DSHOCK_SHOCK_GRAPH_HPP_
#define DSHOCK_SHOCK_GRAPH_HPP_

#include <limits>
#include <vector>

namespace dshock {

// One linear piece of an arc: on [t_begin, t_end] the carrier line is
// x = x_begin + speed (t - t_begin) and the amplitudes grow linearly.
// amplitude2 is only used by solutions concentrated in both unknowns.
struct ArcPiece {
  double t_begin = 0.0;
  double t_end = std::numeric_limits<double>::infinity();
  double x_begin = 0.0;
  double speed = 0.0;
  double amp_begin = 0.0;
  double amp_rate = 0.0;
  double amp2_begin = 0.0;
  double amp2_rate = 0.0;

  double position(double t) const { return x_begin + speed * (t - t_begin); }
  double amplitude(double t) const { return amp_begin + amp_rate * (t - t_begin); }
  double amplitude2(double t) const { return amp2_begin + amp2_rate * (t - t_begin); }
};

// Lipschitz, piecewise-linear arc in the closed upper half plane.
class Arc {
 public:
  explicit Arc(std::vector<ArcPiece> pieces);

  static Arc straight(double x0, double t0, double speed, double amp0, double amp_rate,
                      double amp2_0 = 0.0, double amp2_rate = 0.0);

  const std::vector<ArcPiece>& pieces() const { return pieces_; }
  double start_time() const { return pieces_.front().t_begin; }
  double start_point() const { return pieces_.front().x_begin; }
  double end_time() const { return pieces_.back().t_end; }
  bool touches_axis() const { return start_time() == 0.0; }

  // Requires start_time() <= t <= end_time().
  double position(double t) const;
  double amplitude(double t) const;
  double amplitude2(double t) const;

 private:
  const ArcPiece& piece_at(double t) const;
  std::vector<ArcPiece> pieces_;
};

struct ShockGraph {
  std::vector<Arc> arcs;

  // Indices of arcs starting on t = 0.
  std::vector<std::size_t> initial_indices() const;
};

}  // namespace dshock

#endif  // DSHOCK_SHOCK_GRAPH_HPP_
