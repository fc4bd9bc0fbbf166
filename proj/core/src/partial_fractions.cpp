#include "summa/specfun/partial_fractions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "summa/error.hpp"

namespace summa::specfun {

namespace {

std::vector<Complex> companion_roots(const Polynomial& p) {
  const std::size_t d = p.degree();
  const auto& c = p.coeffs();
  if (d == 0) return {};
  if (d == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::IllConditioned, "companion eigensolve did not converge");
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

Complex newton_polish(const Polynomial& p, Complex x) {
  Polynomial dp = p.derivative();
  for (int it = 0; it < 8; ++it) {
    Complex d = dp(x);
    if (d == Complex(0.0)) break;
    Complex step = p(x) / d;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

// Yun's algorithm: returns factors a_1, a_2, ... with f = c * prod a_i^i.
std::vector<Polynomial> square_free(const Polynomial& f) {
  std::vector<Polynomial> out;
  Polynomial fp = f.derivative();
  Polynomial a0 = gcd_exact(f, fp);
  Polynomial b = divmod_exact(f, a0).first;
  Polynomial c = divmod_exact(fp, a0).first;
  Polynomial d = c - b.derivative();
  while (b.degree() > 0) {
    Polynomial a = gcd_exact(b, d);
    out.push_back(a);
    b = divmod_exact(b, a).first;
    c = divmod_exact(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

// Residue series run in 50 digits: the Taylor shift of monomial coefficients
// cancels like (1 + |r|)^deg against |N(r)|, and products with the other
// poles' (d + x)^(-s) expansions cancel again for high multiplicities.
using F = boost::multiprecision::cpp_bin_float_50;

struct XC {
  F re = 0, im = 0;
  XC operator+(const XC& o) const { return {re + o.re, im + o.im}; }
  XC operator*(const XC& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  XC inv() const {
    F n = re * re + im * im;
    return {re / n, -im / n};
  }
  static XC of(Complex z) { return {F(z.real()), F(z.imag())}; }
  Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

// Truncated power series in x, length L.
using Ser = std::vector<XC>;

Ser ser_mul(const Ser& a, const Ser& b) {
  Ser out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

// (d + x)^(-s) to length L
Ser inv_binomial(const XC& d, int s, std::size_t L) {
  Ser out(L);
  const XC dinv = d.inv();
  XC term{1, 0};
  for (int i = 0; i < s; ++i) term = term * dinv;
  for (std::size_t k = 0; k < L; ++k) {
    out[k] = term;
    // coefficient ratio: C(s+k, k+1)/C(s+k-1, k) * (-1/d)
    F c = -F(s + static_cast<int>(k)) / F(k + 1);
    term = term * dinv * XC{c, 0};
  }
  return out;
}

// First L Taylor coefficients of p at r by repeated synthetic division,
// from the exact coefficients when there are any.
Ser taylor_at(const Polynomial& p, const XC& r, std::size_t L) {
  const std::size_t n = p.coeffs().size();
  Ser c(n);
  if (p.is_exact()) {
    const auto& q = p.exact_coeffs();
    for (std::size_t i = 0; i < n; ++i)
      c[i].re = F(boost::multiprecision::numerator(q[i])) / F(boost::multiprecision::denominator(q[i]));
  } else {
    for (std::size_t i = 0; i < n; ++i) c[i] = XC::of(p.coeffs()[i]);
  }
  Ser out(L);
  std::size_t len = n;
  for (std::size_t k = 0; k < L && len > 0; ++k) {
    // divide by (x - r): quotient in place, remainder is the k-th coefficient
    XC b = c[len - 1];
    for (std::size_t i = len - 1; i-- > 0;) {
      XC next = c[i] + b * r;
      c[i] = b;
      b = next;
    }
    out[k] = b;
    --len;
  }
  return out;
}

bool near_nonnegative_integer(Complex r) {
  double k = std::round(r.real());
  return k >= 0.0 && std::abs(r - Complex(k, 0.0)) < kRootClusterTol;
}

}  // namespace

Complex PartialFractionForm::operator()(Complex n) const {
  Complex acc = polynomial_part.is_zero() ? Complex(0.0) : polynomial_part(n);
  for (const auto& t : pole_terms) acc += t.coeff / std::pow(n + t.alpha, t.nu);
  return acc;
}

Factorization Factorization::raised(int power) const {
  Factorization f;
  f.leading = std::pow(leading, power);
  for (const auto& r : roots) f.roots.push_back(Root{r.value, r.multiplicity * power});
  return f;
}

Complex Factorization::operator()(Complex x) const {
  Complex acc = leading;
  for (const auto& r : roots) acc *= std::pow(x - r.value, r.multiplicity);
  return acc;
}

std::size_t Factorization::degree() const {
  std::size_t d = 0;
  for (const auto& r : roots) d += static_cast<std::size_t>(r.multiplicity);
  return d;
}

Factorization factor_polynomial(const Polynomial& w, double cluster_tol) {
  if (w.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  Factorization f;
  f.leading = w.leading();
  if (w.degree() == 0) return f;

  if (w.is_exact()) {
    auto parts = square_free(w);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].degree() == 0) continue;
      for (Complex r : companion_roots(parts[i]))
        f.roots.push_back(Root{newton_polish(parts[i], r), static_cast<int>(i + 1)});
    }
    return f;
  }

  auto raw = companion_roots(w);
  // single-linkage clustering
  std::vector<int> label(raw.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < raw.size(); ++b) {
        if (label[b] < 0 && std::abs(raw[a] - raw[b]) <= cluster_tol * std::max(1.0, std::abs(raw[a]))) {
          label[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  for (int c = 0; c < next; ++c) {
    Complex sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (label[i] == c) {
        sum += raw[i];
        ++count;
      }
    Complex r = sum / static_cast<double>(count);
    Polynomial target = w;
    for (int k = 1; k < count; ++k) target = target.derivative();
    f.roots.push_back(Root{newton_polish(target, r), count});
  }
  return f;
}

PartialFractionForm partial_fractions(const Polynomial& w) {
  if (w.degree() < 1) fail(ErrorCode::InvalidArgument, "partial fractions need deg w >= 1");
  Polynomial one = w.is_exact() ? Polynomial(std::vector<Rational>{1}) : Polynomial(std::vector<Complex>{1.0});
  return partial_fractions(one, w);
}

PartialFractionForm partial_fractions(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) fail(ErrorCode::InvalidArgument, "zero denominator");
  return partial_fractions(num, factor_polynomial(den));
}

PartialFractionForm partial_fractions(const Polynomial& num, const Factorization& den, double recon_tol,
                                      bool rounding_floor) {
  for (const auto& r : den.roots)
    if (near_nonnegative_integer(r.value))
      fail(ErrorCode::RootOnNonnegativeIntegers, "denominator vanishes at a nonnegative integer");

  // Expand the denominator from its factorization for the division step.
  Polynomial expanded = Polynomial::constant(Number(den.leading));
  for (const auto& r : den.roots) expanded = expanded * Polynomial::linear_root(r.value).pow(r.multiplicity);

  PartialFractionForm out;
  Polynomial rem = num;
  if (num.degree() >= expanded.degree() && den.degree() > 0) {
    auto qr = divmod(Polynomial(num.coeffs()), expanded);
    out.polynomial_part = qr.first;
    rem = qr.second;
  } else if (den.degree() == 0) {
    out.polynomial_part = Polynomial(num.coeffs()).scaled(Number(1.0 / den.leading));
    rem = Polynomial(std::vector<Complex>{0.0});
  } else {
    out.polynomial_part = Polynomial(std::vector<Complex>{0.0});
  }

  for (std::size_t q = 0; q < den.roots.size(); ++q) {
    const Complex r = den.roots[q].value;
    const int s = den.roots[q].multiplicity;
    const auto L = static_cast<std::size_t>(s);
    const XC rx = XC::of(r);
    // N(r + x) / lead / prod (r - r_j + x)^(s_j)
    Ser g = ser_mul(taylor_at(rem, rx, L), Ser{XC::of(den.leading).inv()});
    for (std::size_t j = 0; j < den.roots.size(); ++j) {
      if (j == q) continue;
      const XC rj = XC::of(den.roots[j].value);
      g = ser_mul(g, inv_binomial(XC{rx.re - rj.re, rx.im - rj.im}, den.roots[j].multiplicity, L));
    }
    for (int nu = 1; nu <= s; ++nu)
      out.pole_terms.push_back(PoleTerm{-r, nu, g[static_cast<std::size_t>(s - nu)].to_complex()});
  }

  for (int n = 0; n < 32; ++n) {
    Complex x(n, 0.0);
    Complex ref = num(x) / den(x);
    Complex got = out(x);
    double err = std::abs(got - ref);
    double scale = std::abs(ref);
    double allowed = recon_tol * (scale > 0.0 ? scale : 1.0);
    if (rounding_floor) {
      double mass = 0.0;
      for (const auto& t : out.pole_terms) mass += std::abs(t.coeff / std::pow(x + t.alpha, t.nu));
      allowed += 64.0 * std::numeric_limits<double>::epsilon() * mass;
    }
    if (!(err <= allowed))
      fail(ErrorCode::IllConditioned, "partial fraction reconstruction failed at n = " + std::to_string(n));
  }
  return out;
}

}  // namespace summa::specfun
