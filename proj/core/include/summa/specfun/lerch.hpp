#pragma once

#include <optional>

#include "summa/number.hpp"

namespace summa::specfun {

struct HurwitzLerchQuery {
  Complex t;
  int s = 1;
  Complex a;
  // When empty the shift rule n0 = max(0, ceil(1 - Re a) + 1) applies.
  std::optional<int> n0;
};

struct LerchOptions {
  double tol = 1e-10;
  // Cross-check the quadrature against partial sums when |t| < 1/2.
  bool self_check = false;
};

// Phi(t, s, a) = sum t^n / (n + a)^s, continued off [1, inf).
Complex hurwitz_lerch(const HurwitzLerchQuery& q, const LerchOptions& opts = {});
Complex hurwitz_lerch(Complex t, int s, Complex a, const LerchOptions& opts = {});

int lerch_shift(Complex a);
// Direct partial sum of the defining series.
Complex lerch_partial_sum(Complex t, int s, Complex a, int terms = 1024);

// Angle mapped into [0, 2 pi).
double normalize_angle(double theta);
// Distance from 1 to the half-line of direction theta.
double c_theta(double theta);
// 1 / (C(theta) (Re a)^s)
double phi_ray_bound(double theta, int s, Complex a);

}  // namespace summa::specfun
