#include "summa/specfun/rational_gen.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "summa/error.hpp"
#include "summa/specfun/generating.hpp"

namespace summa::specfun {

Complex rational_gen_eval(const PartialFractionForm& R, Complex u, const LerchOptions& opts) {
  check_off_cut(u);
  if (u == Complex(0.0)) return R(Complex(0.0));
  Complex acc = R.polynomial_part.is_zero() ? Complex(0.0) : poly_gen(R.polynomial_part, u);
  for (const auto& term : R.pole_terms) {
    if (term.coeff == Complex(0.0)) continue;
    acc += term.coeff * hurwitz_lerch(HurwitzLerchQuery{u, term.nu, term.alpha, std::nullopt}, opts);
  }
  return acc;
}

Complex weighted_integral_check(const std::function<Complex(Complex)>& f, double cut_radius, Complex a, Complex z) {
  if (!(a.real() > 1.0)) fail(ErrorCode::InvalidArgument, "weighted integral requires Re a > 1");
  if (z.imag() == 0.0 && z.real() >= cut_radius)
    fail(ErrorCode::BranchViolation, "segment [0, z] meets the cut");
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  // zeta = x z turns the segment integral into int_0^1 x^(a-1) f(x z) dx.
  auto integrand = [&](double x) -> Complex {
    if (x == 0.0) return 0.0;
    return std::exp((a - 1.0) * std::log(x)) * f(x * z);
  };
  double err = 0.0;
  return GK::integrate(integrand, 0.0, 1.0, 15, 1e-12, &err);
}

}  // namespace summa::specfun
