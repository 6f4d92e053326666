#ifndef DSHOCK_MOLLIFIER_HPP_
#define DSHOCK_MOLLIFIER_HPP_

namespace dshock {

// Canonical mollifier rho(z) = c * exp(-1/(1 - z^2)) on (-1, 1), zero outside,
// normalized to unit mass. Its square root c^{1/2} exp(-1/(2(1 - z^2))) is
// again smooth, which the centered R_2 correction relies on.
class Mollifier {
 public:
  static double normalization();  // c

  static double rho(double z);
  static double drho(double z);
  static double sqrt_rho(double z);
  static double dsqrt_rho(double z);
};

// Unnormalized bump with peak value 1 at z = 0, used for test functions.
double bump(double z);
double dbump(double z);

struct BumpValue {
  double value = 0.0;
  double slope = 0.0;
};
BumpValue bump_with_slope(double z);

// Smooth monotone step on [0, 1]: 0 below, 1 above, all derivatives vanish at
// both ends.
double smooth_step(double s);
double dsmooth_step(double s);

}  // namespace dshock

#endif  // DSHOCK_MOLLIFIER_HPP_
