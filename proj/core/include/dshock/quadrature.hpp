#ifndef DSHOCK_QUADRATURE_HPP_
#define DSHOCK_QUADRATURE_HPP_

#include <span>
#include <vector>

namespace dshock {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached rule of the given order (1..64). Thread-safe.
const GaussRule& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b] split into equal panels.
template <typename F>
auto integrate(F&& f, double a, double b, int panels, int order) -> decltype(f(a)) {
  using R = decltype(f(a));
  R sum{};
  if (!(b > a)) return sum;
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    R local{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      local += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    }
    sum += 0.5 * h * local;
  }
  return sum;
}

// Composite rule whose panel edges include every entry of `breaks` inside
// (a, b); each piece between consecutive breaks gets `panels` panels.
template <typename F>
auto integrate_split(F&& f, double a, double b, std::span<const double> breaks,
                     int panels, int order) -> decltype(f(a)) {
  using R = decltype(f(a));
  R sum{};
  double lo = a;
  for (double x : breaks) {
    if (x <= lo || x >= b) continue;
    sum += integrate(f, lo, x, panels, order);
    lo = x;
  }
  sum += integrate(f, lo, b, panels, order);
  return sum;
}

}  // namespace dshock

#endif  // DSHOCK_QUADRATURE_HPP_
