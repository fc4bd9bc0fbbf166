#include "summa/specfun/lerch.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "summa/error.hpp"
#include "summa/specfun/generating.hpp"

namespace summa::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Q(s, x) * Gamma(s) / Gamma(s) for integer s: e^-x sum_{k<s} x^k/k!
double upper_gamma_regularized(int s, double x) {
  double term = 1.0, acc = 0.0;
  for (int k = 0; k < s; ++k) {
    if (k > 0) term *= x / k;
    acc += term;
  }
  return std::exp(-x) * acc;
}

void validate(const HurwitzLerchQuery& q) {
  if (q.s < 1) fail(ErrorCode::InvalidArgument, "Lerch order s must be a positive integer");
  if (q.a.imag() == 0.0 && q.a.real() <= 0.0 && std::floor(q.a.real()) == q.a.real())
    fail(ErrorCode::InvalidArgument, "Lerch parameter a must not be a nonpositive integer");
  check_off_cut(q.t);
}

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Integral representation, requires Re a > 0.
Complex lerch_integral(Complex t, int s, Complex a, double tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double alpha = a.real();
  const double gamma_s = factorial_d(s - 1);
  const double mod_t = std::abs(t);
  const double theta = std::arg(t);
  const double c = theta == 0.0 ? 0.0 : c_theta(theta);

  auto f = [&](double z) -> Complex {
    if (z == 0.0 && s > 1) return 0.0;
    Complex e = std::exp(-a * z);
    Complex den = Complex(1.0) - t * std::exp(-z);
    return std::pow(z, s - 1) * e / den;
  };

  auto tail_bound = [&](double Z) {
    double d = std::max(c, 1.0 - mod_t * std::exp(-Z));
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return upper_gamma_regularized(s, alpha * Z) / (std::pow(alpha, s) * d);
  };

  const double zstar = mod_t > 1.0 ? std::log(mod_t) : 0.0;
  double Z = zstar + (10.0 + s) / alpha;
  Complex total = 0.0;
  double err_total = 0.0, l1_total = 0.0;

  auto integrate = [&](double lo, double hi) {
    double err = 0.0, l1 = 0.0;
    Complex v = GK::integrate(f, lo, hi, 15, std::max(1e-2 * tol, 1e-13), &err, &l1);
    total += v;
    err_total += err;
    l1_total += l1;
  };

  if (zstar > 0.0) {
    integrate(0.0, zstar);
    integrate(zstar, Z);
  } else {
    integrate(0.0, Z);
  }
  for (int iter = 0; iter < 64; ++iter) {
    double bound = tail_bound(Z);
    if (bound <= 0.1 * tol * std::max(std::abs(total), 1e-300) / gamma_s || bound < 1e-300) break;
    double next = Z * 1.5 + 1.0;
    integrate(Z, next);
    Z = next;
  }
  if (!(err_total <= tol * std::max(l1_total, 1e-300)) && err_total > 1e-300)
  {
    char msg[200];
    std::snprintf(msg, sizeof msg, "Lerch quadrature error %.3g exceeds tolerance at t=(%.6g,%.6g) s=%d a=(%.6g,%.6g)",
                  err_total, t.real(), t.imag(), s, a.real(), a.imag());
    fail(ErrorCode::QuadratureFailure, msg);
  }
  return total / gamma_s;
}

}  // namespace

int lerch_shift(Complex a) {
  int n0 = static_cast<int>(std::ceil(1.0 - a.real())) + 1;
  return std::max(0, n0);
}

Complex lerch_partial_sum(Complex t, int s, Complex a, int terms) {
  Complex acc = 0.0, tn = 1.0;
  for (int n = 0; n < terms; ++n) {
    acc += tn / std::pow(Complex(n) + a, s);
    tn *= t;
  }
  return acc;
}

Complex hurwitz_lerch(const HurwitzLerchQuery& q, const LerchOptions& opts) {
  validate(q);
  const int n0 = q.n0 ? *q.n0 : lerch_shift(q.a);
  if (n0 < 0) fail(ErrorCode::InvalidArgument, "shift must be nonnegative");
  const Complex shifted = q.a + static_cast<double>(n0);
  if (!(shifted.real() > 0.0)) fail(ErrorCode::InvalidArgument, "Re(a + n0) must be positive");

  Complex head = 0.0, tn = 1.0;
  for (int n = 0; n < n0; ++n) {
    head += tn / std::pow(Complex(n) + q.a, q.s);
    tn *= q.t;
  }
  Complex value;
  if (q.t == Complex(0.0)) {
    value = head + (n0 == 0 ? std::pow(shifted, -q.s) : Complex(0.0));
  } else {
    value = head + tn * lerch_integral(q.t, q.s, shifted, opts.tol);
  }
  if (opts.self_check && std::abs(q.t) < 0.5) {
    Complex ref = lerch_partial_sum(q.t, q.s, q.a, 1024);
    if (std::abs(ref - value) > 1e-8 * (1.0 + std::abs(ref)))
      fail(ErrorCode::QuadratureFailure, "Lerch self-check against partial sums failed");
  }
  return value;
}

Complex hurwitz_lerch(Complex t, int s, Complex a, const LerchOptions& opts) {
  return hurwitz_lerch(HurwitzLerchQuery{t, s, a, std::nullopt}, opts);
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

double c_theta(double theta) {
  double t = normalize_angle(theta);
  if (t == 0.0 || std::abs(t - 2.0 * kPi) < 1e-15 || std::abs(t) < 1e-15)
    fail(ErrorCode::ForbiddenDirection, "direction 0 is the positive real axis");
  if (t < kPi / 2.0 || t > 3.0 * kPi / 2.0) return std::abs(std::sin(t));
  return 1.0;
}

double phi_ray_bound(double theta, int s, Complex a) {
  if (!(a.real() > 0.0)) fail(ErrorCode::InvalidArgument, "bound requires Re a > 0");
  return 1.0 / (c_theta(theta) * std::pow(a.real(), s));
}

}  // namespace summa::specfun
