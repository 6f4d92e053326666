#ifndef DSHOCK_TEST_FUNCTION_HPP_
#define DSHOCK_TEST_FUNCTION_HPP_

#include <algorithm>
#include <string>
#include <utility>

#include "dshock/mollifier.hpp"

namespace dshock {

// phi(x, t) = bump((x - x0)/rx) * bump((t - t0)/rt), restricted to t >= 0.
// With t0 - rt < 0 the trace phi(., 0) is nonzero, which exercises the
// initial-data terms of the weak identities.
class TestFunction {
 public:
  TestFunction(double x0, double t0, double rx, double rt, std::string id = {})
      : x0_(x0), t0_(t0), rx_(rx), rt_(rt), id_(std::move(id)) {}

  double operator()(double x, double t) const {
    return bump((x - x0_) / rx_) * bump((t - t0_) / rt_);
  }
  double dx(double x, double t) const {
    return dbump((x - x0_) / rx_) / rx_ * bump((t - t0_) / rt_);
  }
  double dt(double x, double t) const {
    return bump((x - x0_) / rx_) * dbump((t - t0_) / rt_) / rt_;
  }

  struct Jet {
    double value, dx, dt;
  };
  Jet jet(double x, double t) const {
    const BumpValue bx = bump_with_slope((x - x0_) / rx_);
    const BumpValue bt = bump_with_slope((t - t0_) / rt_);
    return {bx.value * bt.value, bx.slope / rx_ * bt.value, bx.value * bt.slope / rt_};
  }

  double x_min() const { return x0_ - rx_; }
  double x_max() const { return x0_ + rx_; }
  double t_min() const { return std::max(0.0, t0_ - rt_); }
  double t_max() const { return t0_ + rt_; }
  bool touches_initial_line() const { return t0_ - rt_ < 0.0; }

  double x0() const { return x0_; }
  double t0() const { return t0_; }
  double rx() const { return rx_; }
  double rt() const { return rt_; }
  const std::string& id() const { return id_; }

 private:
  double x0_, t0_, rx_, rt_;
  std::string id_;
};

// Spatial test function phi(x) = bump((x - x0)/r).
class SpatialTestFunction {
 public:
  SpatialTestFunction(double x0, double r, std::string id = {})
      : x0_(x0), r_(r), id_(std::move(id)) {}

  double operator()(double x) const { return bump((x - x0_) / r_); }
  double dx(double x) const { return dbump((x - x0_) / r_) / r_; }
  double x_min() const { return x0_ - r_; }
  double x_max() const { return x0_ + r_; }
  double x0() const { return x0_; }
  double radius() const { return r_; }
  const std::string& id() const { return id_; }

 private:
  double x0_, r_;
  std::string id_;
};

}  // namespace dshock

#endif  // DSHOCK_TEST_FUNCTION_HPP_
