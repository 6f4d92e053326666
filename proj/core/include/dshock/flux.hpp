#ifndef DSHOCK_FLUX_HPP_
#define DSHOCK_FLUX_HPP_

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "dshock/state.hpp"

namespace dshock {

using Complex = std::complex<double>;

// coef * u^pu * v^pv
struct Monomial {
  double coef = 0.0;
  int pu = 0;
  int pv = 0;
};

// Polynomial in two variables, stored as a coefficient table. Evaluation
// works unchanged on complex arguments, which gives the holomorphic extension
// required by the complex-valued approximating families.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms);

  double operator()(double u, double v) const;
  Complex operator()(Complex u, Complex v) const;
  double d_du(double u, double v) const;
  double d_dv(double u, double v) const;

  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const;

 private:
  std::vector<Monomial> terms_;
};

struct Jacobian {
  double fu, fv, gu, gv;
};

using Direction = std::array<double, 2>;

struct EigenDecomposition {
  double lambda1;
  double lambda2;
  Direction r1;  // unit length
  Direction r2;  // unit length
};

// Flux pair (f, g) of  u_t + f(u,v)_x = 0,  v_t + g(u,v)_x = 0.
class FluxPair {
 public:
  FluxPair(std::string name, Polynomial f, Polynomial g)
      : name_(std::move(name)), f_(std::move(f)), g_(std::move(g)) {}

  const std::string& name() const { return name_; }
  const Polynomial& f() const { return f_; }
  const Polynomial& g() const { return g_; }

  std::pair<double, double> operator()(const State& s) const {
    return {f_(s.u, s.v), g_(s.u, s.v)};
  }
  Jacobian jacobian(const State& s) const;

 private:
  std::string name_;
  Polynomial f_;
  Polynomial g_;
};

// f = (u^2 + v^2)/2,  g = v(u - 1).
FluxPair brio_flux();

// Returns (f(u,v), g(u,v)); rejects non-finite arguments.
std::pair<Complex, Complex> eval_flux(const FluxPair& flux, Complex u, Complex v);

// Numeric eigen-decomposition of the flux Jacobian, lambda1 <= lambda2.
// Throws kNotHyperbolic for complex or defective eigenvalues.
EigenDecomposition jacobian_eigen(const FluxPair& flux, const State& s);

}  // namespace dshock

#endif  // DSHOCK_FLUX_HPP_
