#include "summa/number.hpp"

#include <cmath>

#include "summa/error.hpp"

namespace summa {

double to_double(const Rational& q) { return q.convert_to<double>(); }

double to_double(const BigInt& z) { return z.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 bits of mantissa as an integer
  auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    try {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      fail(ErrorCode::ParseError, "bad rational literal '" + text + "'");
    }
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  BigInt digits = 0;
  BigInt scale = 1;
  bool seen_dot = false;
  bool any = false;
  long exponent = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if ((c == 'e' || c == 'E') && any) {
      std::size_t used = 0;
      try {
        exponent = std::stol(s.substr(i + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || i + 1 + used != s.size() || exponent > 4096 || exponent < -4096)
        fail(ErrorCode::ParseError, "bad rational literal '" + text + "'");
      break;
    }
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_dot) scale *= 10;
      any = true;
    } else {
      fail(ErrorCode::ParseError, "bad rational literal '" + text + "'");
    }
  }
  if (!any) fail(ErrorCode::ParseError, "bad rational literal '" + text + "'");
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0)
    digits *= ten_pow;
  else
    scale *= ten_pow;
  Rational r(digits, scale);
  return neg ? Rational(-r) : r;
}

const Rational& Number::exact() const {
  if (!exact_) fail(ErrorCode::NotExact, "number has no exact value");
  return *exact_;
}

bool Number::is_zero() const {
  if (exact_) return *exact_ == 0;
  return value_ == Complex(0.0, 0.0);
}

bool operator==(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.value() == b.value();
}

}  // namespace summa
