#include "summa/polynomial.hpp"

#include <algorithm>

#include "summa/error.hpp"

namespace summa {

namespace {

std::vector<Complex> to_complex(const std::vector<Rational>& q) {
  std::vector<Complex> out;
  out.reserve(q.size());
  for (const auto& v : q) out.emplace_back(to_double(v), 0.0);
  return out;
}

Rational binom(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return Rational(r);
}

}  // namespace

Polynomial::Polynomial() : coeffs_{Complex(0.0)}, exact_(std::vector<Rational>{Rational(0)}) {}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Polynomial::Polynomial(std::vector<Rational> coeffs) {
  if (coeffs.empty()) coeffs.emplace_back(0);
  coeffs_ = to_complex(coeffs);
  exact_ = std::move(coeffs);
  trim();
}

Polynomial::Polynomial(const std::vector<Number>& coeffs) {
  bool exact = std::all_of(coeffs.begin(), coeffs.end(), [](const Number& n) { return n.is_exact(); });
  if (exact) {
    std::vector<Rational> q;
    for (const auto& n : coeffs) q.push_back(n.exact());
    *this = Polynomial(std::move(q));
  } else {
    std::vector<Complex> c;
    for (const auto& n : coeffs) c.push_back(n.value());
    *this = Polynomial(std::move(c));
  }
}

Polynomial Polynomial::constant(const Number& c) { return Polynomial(std::vector<Number>{c}); }

Polynomial Polynomial::linear_root(Complex root) { return Polynomial(std::vector<Complex>{-root, 1.0}); }

void Polynomial::trim() {
  if (exact_) {
    while (exact_->size() > 1 && exact_->back() == 0) exact_->pop_back();
    coeffs_.resize(exact_->size());
  } else {
    while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  }
}

const std::vector<Rational>& Polynomial::exact_coeffs() const {
  if (!exact_) fail(ErrorCode::NotExact, "polynomial has inexact coefficients");
  return *exact_;
}

std::vector<Number> Polynomial::numbers() const {
  std::vector<Number> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (exact_) out.emplace_back((*exact_)[i]);
    else out.emplace_back(coeffs_[i]);
  }
  return out;
}

bool Polynomial::is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0); }

bool Polynomial::is_real(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](const Complex& c) { return std::abs(c.imag()) <= tol * std::max(1.0, std::abs(c)); });
}

Complex Polynomial::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational Polynomial::eval_exact(const Rational& x) const {
  const auto& q = exact_coeffs();
  Rational acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return exact_ ? Polynomial(std::vector<Rational>{0}) : Polynomial(std::vector<Complex>{0.0});
  if (exact_) {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < exact_->size(); ++i) d.push_back((*exact_)[i] * static_cast<long long>(i));
    return Polynomial(std::move(d));
  }
  std::vector<Complex> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<double>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(const Number& c) const {
  const std::size_t n = coeffs_.size();
  if (exact_ && c.is_exact()) {
    std::vector<Rational> out(n, Rational(0));
    const Rational& cc = c.exact();
    for (std::size_t k = 0; k < n; ++k) {
      Rational cpow = 1;
      for (std::size_t j = k; j < n; ++j) {
        // term coeff_j * C(j,k) * c^(j-k)
        out[k] += (*exact_)[j] * binom(static_cast<unsigned>(j), static_cast<unsigned>(k)) * cpow;
        cpow *= cc;
      }
    }
    return Polynomial(std::move(out));
  }
  std::vector<Complex> out(n, 0.0);
  const Complex cc = c.value();
  for (std::size_t k = 0; k < n; ++k) {
    Complex cpow = 1.0;
    for (std::size_t j = k; j < n; ++j) {
      out[k] += coeffs_[j] * to_double(binom(static_cast<unsigned>(j), static_cast<unsigned>(k))) * cpow;
      cpow *= cc;
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = exact_ ? Polynomial(std::vector<Rational>{1}) : Polynomial(std::vector<Complex>{1.0});
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::scaled(const Number& c) const { return *this * Polynomial::constant(c); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  if (a.exact_ && b.exact_) {
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t i = 0; i < a.exact_->size(); ++i) out[i] += (*a.exact_)[i];
    for (std::size_t i = 0; i < b.exact_->size(); ++i) out[i] += (*b.exact_)[i];
    return Polynomial(std::move(out));
  }
  std::vector<Complex> out(n, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(Number(-1)); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
  if (a.exact_ && b.exact_) {
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t i = 0; i < a.exact_->size(); ++i)
      for (std::size_t j = 0; j < b.exact_->size(); ++j) out[i + j] += (*a.exact_)[i] * (*b.exact_)[j];
    return Polynomial(std::move(out));
  }
  std::vector<Complex> out(n, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.coeffs_ == b.coeffs_;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (a.is_exact() && b.is_exact()) return divmod_exact(a, b);
  std::vector<Complex> rem = a.coeffs();
  const auto& d = b.coeffs();
  const std::size_t db = b.degree();
  if (a.degree() < db) return {Polynomial(std::vector<Complex>{0.0}), a};
  std::vector<Complex> quot(a.degree() - db + 1, 0.0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Complex c = rem[k + db] / d[db];
    quot[k] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= c * d[j];
  }
  rem.resize(db == 0 ? 1 : db);
  if (db == 0) rem[0] = 0.0;
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::pair<Polynomial, Polynomial> divmod_exact(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> rem = a.exact_coeffs();
  const auto& d = b.exact_coeffs();
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
  const std::size_t db = b.degree();
  if (a.degree() < db) return {Polynomial(std::vector<Rational>{0}), a};
  std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational c = rem[k + db] / d[db];
    quot[k] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= c * d[j];
  }
  rem.resize(db == 0 ? 1 : db);
  if (db == 0) rem[0] = 0;
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd_exact(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod_exact(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational lead = a.exact_coeffs().back();
  return a.scaled(Number(Rational(1) / lead));
}

}  // namespace summa
