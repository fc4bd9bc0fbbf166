#pragma once

#include <complex>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace summa {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);
double to_double(const BigInt& z);
std::string to_string(const Rational& q);
// Exact binary value of a finite double.
Rational exact_rational(double x);
// Parses "p", "-p/q" or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

// A scalar that is either an exact rational or a complex double.
class Number {
 public:
  Number() : Number(Rational(0)) {}
  Number(int v) : Number(Rational(v)) {}
  Number(long long v) : Number(Rational(v)) {}
  Number(const Rational& q) : value_(to_double(q), 0.0), exact_(q) {}
  Number(double v) : value_(v, 0.0) {}
  Number(Complex v) : value_(v) {}

  const Complex& value() const { return value_; }
  double real() const { return value_.real(); }
  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;
  bool is_zero() const;

 private:
  Complex value_;
  std::optional<Rational> exact_;
};

bool operator==(const Number& a, const Number& b);

}  // namespace summa
