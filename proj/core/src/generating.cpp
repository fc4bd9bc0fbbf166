#include "summa/specfun/generating.hpp"

#include <cmath>

#include "summa/error.hpp"
#include "summa/specfun/stirling.hpp"

namespace summa::specfun {

void check_off_cut(Complex t, double radius) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) fail(ErrorCode::InvalidArgument, "non-finite argument");
  if (t.imag() == 0.0 && t.real() >= radius) fail(ErrorCode::CutViolation, "argument lies on the cut");
}

Complex pochhammer_gen(unsigned j, Complex t) {
  check_off_cut(t);
  double f = 1.0;
  for (unsigned i = 2; i <= j; ++i) f *= i;
  return f * std::pow(Complex(1.0) - t, -static_cast<double>(j + 1));
}

PolyGen::PolyGen(const Polynomial& w) {
  const auto& tab = shared_stirling_table();
  if (w.degree() > tab.max_p) fail(ErrorCode::IllConditioned, "polynomial degree exceeds the stirling table");
  // w(n) = v(n+1)
  Polynomial v = w.shifted(Number(-1));
  const std::size_t d = v.degree();
  c_.assign(d + 1, 0.0);
  if (v.is_exact()) {
    const auto& q = v.exact_coeffs();
    for (std::size_t m = 0; m <= d; ++m) {
      Rational acc = 0;
      for (std::size_t l = m; l <= d; ++l) {
        Rational term = q[l] * Rational(tab.second_kind[l][m]);
        acc += ((l - m) % 2 == 0) ? term : Rational(-term);
      }
      c_[m] = to_double(acc * Rational(factorial(m)));
    }
  } else {
    const auto& q = v.coeffs();
    for (std::size_t m = 0; m <= d; ++m) {
      Complex acc = 0.0;
      for (std::size_t l = m; l <= d; ++l) {
        double s = to_double(tab.second_kind[l][m]);
        acc += ((l - m) % 2 == 0 ? 1.0 : -1.0) * s * q[l];
      }
      c_[m] = acc * to_double(factorial(m));
    }
  }
  // Delta^j w(0) = sum_i (-1)^(j-i) C(j,i) w(i)
  d_.assign(d + 1, 0.0);
  if (w.is_exact()) {
    std::vector<Rational> vals(d + 1);
    for (std::size_t i = 0; i <= d; ++i) vals[i] = w.eval_exact(Rational(static_cast<long long>(i)));
    for (std::size_t j = 0; j <= d; ++j) {
      d_[j] = to_double(vals[0]);
      for (std::size_t i = 0; i + j < d; ++i) vals[i] = vals[i + 1] - vals[i];
    }
  } else {
    std::vector<Complex> vals(d + 1);
    for (std::size_t i = 0; i <= d; ++i) vals[i] = w(static_cast<double>(i));
    for (std::size_t j = 0; j <= d; ++j) {
      d_[j] = vals[0];
      for (std::size_t i = 0; i + j < d; ++i) vals[i] = vals[i + 1] - vals[i];
    }
  }
}

Complex PolyGen::operator()(Complex t) const {
  check_off_cut(t);
  const Complex g = 1.0 / (Complex(1.0) - t);
  if (std::abs(t) <= 1.0) {
    const Complex u = t * g;
    Complex acc = 0.0;
    for (auto it = d_.rbegin(); it != d_.rend(); ++it) acc = acc * u + *it;
    return g * acc;
  }
  Complex acc = 0.0;
  Complex gp = g;
  for (const auto& c : c_) {
    acc += c * gp;
    gp *= g;
  }
  return acc;
}

Complex poly_gen(const Polynomial& w, Complex t) { return PolyGen(w)(t); }

}  // namespace summa::specfun
