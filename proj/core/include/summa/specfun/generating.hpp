#pragma once

#include <vector>

#include "summa/number.hpp"
#include "summa/polynomial.hpp"

namespace summa::specfun {

// Throws CutViolation when t lies on [radius, inf).
void check_off_cut(Complex t, double radius = 1.0);

// j! / (1-t)^(j+1) = sum (n+1)...(n+j) t^n
Complex pochhammer_gen(unsigned j, Complex t);

// Closed form of sum w(n) t^n valid off [1, inf). Precomputes the
// coefficients c_m of sum_m c_m / (1-t)^(m+1) and the same function
// re-expanded around t = 0, (1/(1-t)) sum_j (Delta^j w)(0) (t/(1-t))^j,
// which avoids the cancellation of the pole form for |t| <= 1.
class PolyGen {
 public:
  explicit PolyGen(const Polynomial& w);
  Complex operator()(Complex t) const;
  const std::vector<Complex>& pole_coeffs() const { return c_; }
  const std::vector<Complex>& forward_differences() const { return d_; }

 private:
  std::vector<Complex> c_;
  std::vector<Complex> d_;
};

Complex poly_gen(const Polynomial& w, Complex t);

}  // namespace summa::specfun
