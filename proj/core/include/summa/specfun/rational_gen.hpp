#pragma once

#include <functional>

#include "summa/number.hpp"
#include "summa/specfun/lerch.hpp"
#include "summa/specfun/partial_fractions.hpp"

namespace summa::specfun {

// sum R(n) u^n for u off [1, inf), through poly_gen and shifted Lerch values.
Complex rational_gen_eval(const PartialFractionForm& R, Complex u, const LerchOptions& opts = {});

// g(z) = z^(-a) int_0^z zeta^(a-1) f(zeta) d zeta along the segment [0, z].
Complex weighted_integral_check(const std::function<Complex(Complex)>& f, double cut_radius, Complex a, Complex z);

}  // namespace summa::specfun
