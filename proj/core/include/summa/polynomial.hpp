#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "summa/number.hpp"

namespace summa {

// Polynomial in one variable, lowest degree first. Carries exact rational
// coefficients whenever every coefficient it was built from was exact.
class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(std::vector<Complex> coeffs);
  explicit Polynomial(std::vector<Rational> coeffs);
  explicit Polynomial(const std::vector<Number>& coeffs);

  static Polynomial constant(const Number& c);
  // (x - root)
  static Polynomial linear_root(Complex root);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact_coeffs() const;
  std::vector<Number> numbers() const;
  bool is_zero() const;
  bool is_real(double tol = 0.0) const;
  Complex leading() const { return coeffs_.back(); }

  Complex operator()(Complex x) const;
  Complex operator()(double x) const { return (*this)(Complex(x, 0.0)); }
  Rational eval_exact(const Rational& x) const;

  Polynomial derivative() const;
  // Coefficients of p(x + c).
  Polynomial shifted(const Number& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial scaled(const Number& c) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<Complex> coeffs_;
  std::optional<std::vector<Rational>> exact_;
};

// Floating-point long division: a = q*b + r with deg r < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Exact rational long division; both inputs must be exact.
std::pair<Polynomial, Polynomial> divmod_exact(const Polynomial& a, const Polynomial& b);
// Monic gcd over the rationals.
Polynomial gcd_exact(Polynomial a, Polynomial b);

}  // namespace summa
