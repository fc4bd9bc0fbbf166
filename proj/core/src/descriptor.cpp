#include "summa/seqcore/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "summa/error.hpp"

namespace summa::seq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

Rational rpow(const Rational& q, std::size_t n) {
  BigInt num = boost::multiprecision::pow(numerator(q), static_cast<unsigned>(n));
  BigInt den = boost::multiprecision::pow(denominator(q), static_cast<unsigned>(n));
  return Rational(num, den);
}

BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

void check_range(std::size_t n, const EvalOptions& opts) {
  if (n > opts.n_max) fail(ErrorCode::InvalidArgument, "index exceeds n_max");
}

[[noreturn]] void invalid(const std::string& what) { fail(ErrorCode::InvalidDescriptor, what); }

double positive_real(const Complex& v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorCode::Overflow, std::string(what) + " overflowed");
  if (std::abs(v.imag()) > 1e-9 * std::abs(v) || v.real() <= 0.0)
    fail(ErrorCode::NonPositiveValue, std::string(what) + " is not a positive real");
  return v.real();
}

double checked_positive(double v, const char* what) {
  if (std::isnan(v) || v <= 0.0) fail(ErrorCode::NonPositiveValue, std::string(what) + " is not positive");
  if (!std::isfinite(v)) fail(ErrorCode::Overflow, std::string(what) + " overflowed");
  return v;
}

double qfactorial_log(double q, std::size_t n) {
  double acc = 0.0;
  if (q == 0.0) return 0.0;
  double qj = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    qj *= q;
    acc += std::log1p(-qj) - std::log1p(-q);
  }
  return acc;
}

void require_positive_on_check_range(const SequenceDescriptor& d, const char* what) {
  try {
    for (std::size_t n = 0; n <= kPositivityCheck; ++n) {
      double v = seq_log_eval(d, n);
      if (!std::isfinite(v)) invalid(std::string(what) + ": non-finite log value");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidDescriptor) throw;
    invalid(std::string(what) + " fails positivity: " + e.what());
  }
}

}  // namespace

template <typename T>
SequenceDescriptor wrap(T payload) {
  auto node = std::make_shared<SequenceDescriptor::Node>();
  node->payload = std::move(payload);
  return SequenceDescriptor(std::move(node));
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::geometric: return "geometric";
    case Kind::polynomial: return "polynomial";
    case Kind::rational: return "rational";
    case Kind::power_sum: return "power_sum";
    case Kind::exp_poly: return "exp_poly";
    case Kind::q_factorial: return "q_factorial";
    case Kind::gamma_ratio: return "gamma_ratio";
    case Kind::periodic: return "periodic";
    case Kind::q_gaussian: return "q_gaussian";
    case Kind::product: return "product";
    case Kind::inverse: return "inverse";
    case Kind::sum: return "sum";
    case Kind::perturbed: return "perturbed";
  }
  return "unknown";
}

Kind SequenceDescriptor::kind() const { return static_cast<Kind>(node_->payload.index()); }

bool SequenceDescriptor::exact_capable() const {
  switch (kind()) {
    case Kind::geometric: return as<Geometric>().a.is_exact();
    case Kind::polynomial: return as<PolynomialSeq>().w.is_exact();
    case Kind::rational: return as<RationalSeq>().num.is_exact() && as<RationalSeq>().den.is_exact();
    case Kind::power_sum: {
      const auto& p = as<PowerSum>();
      return std::all_of(p.bases.begin(), p.bases.end(), [](const Number& a) { return a.is_exact(); });
    }
    case Kind::exp_poly: {
      const auto& e = as<ExpPolynomial>();
      return std::all_of(e.terms.begin(), e.terms.end(),
                         [](const ExpPolyTerm& t) { return t.w.is_exact() && t.base.is_exact(); });
    }
    case Kind::q_factorial: return as<QFactorial>().q.is_exact();
    case Kind::gamma_ratio: {
      const auto& g = as<GammaRatio>();
      return std::all_of(g.a.begin(), g.a.end(), is_integer) && std::all_of(g.b.begin(), g.b.end(), is_integer);
    }
    case Kind::periodic: {
      const auto& v = as<Periodic>().values;
      return std::all_of(v.begin(), v.end(), [](const Number& x) { return x.is_exact(); });
    }
    case Kind::q_gaussian: return as<QGaussian>().q.is_exact() && is_integer(as<QGaussian>().s);
    case Kind::product: return as<ProductSeq>().left.exact_capable() && as<ProductSeq>().right.exact_capable();
    case Kind::inverse: return as<InverseSeq>().inner.exact_capable();
    case Kind::sum: return as<SumSeq>().left.exact_capable() && as<SumSeq>().right.exact_capable();
    case Kind::perturbed: {
      const auto& p = as<PerturbedSeq>();
      if (!p.base.exact_capable() || p.tail.kind != Tail::Kind::values) return false;
      return std::all_of(p.tail.values.begin(), p.tail.values.end(), [](const Number& x) { return x.is_exact(); });
    }
  }
  return false;
}

// --- tails -------------------------------------------------------------------

double Tail::log_abs(std::size_t n) const {
  switch (kind) {
    case Kind::values:
      if (n >= values.size()) return kNegInf;
      if (values[n].real() == 0.0) return kNegInf;
      return std::log(std::abs(values[n].real()));
    case Kind::factorial:
      if (n == 0) return kNegInf;
      return std::log(std::abs(coeff)) + static_cast<double>(n) * std::log(base) -
             power * std::lgamma(static_cast<double>(n) + 1.0);
    case Kind::q_gaussian:
      if (n == 0) return kNegInf;
      return std::log(std::abs(coeff)) + power * std::log(static_cast<double>(n)) -
             0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * std::log(q);
  }
  return kNegInf;
}

int Tail::sign(std::size_t n) const {
  switch (kind) {
    case Kind::values: {
      if (n >= values.size()) return 0;
      double v = values[n].real();
      return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    case Kind::factorial:
    case Kind::q_gaussian:
      if (n == 0) return 0;
      return coeff > 0 ? 1 : -1;
  }
  return 0;
}

double Tail::value(std::size_t n) const {
  int s = sign(n);
  if (s == 0) return 0.0;
  if (kind == Kind::values) return values[n].real();
  return s * std::exp(log_abs(n));
}

// --- constructors ------------------------------------------------------------

SequenceDescriptor one() { return geometric(Number(1)); }

SequenceDescriptor geometric(const Number& a) {
  if (a.value().imag() != 0.0 || !(a.real() > 0.0) || !std::isfinite(a.real()))
    invalid("geometric base must be a positive real");
  return wrap(Geometric{a});
}

SequenceDescriptor polynomial(const Polynomial& w) {
  bool unit = w.is_exact() ? w.exact_coeffs()[0] == 1 : std::abs(w.coeffs()[0] - Complex(1.0)) <= 1e-14;
  if (!unit) invalid("polynomial sequence requires w(0) = 1");
  auto d = wrap(PolynomialSeq{w});
  require_positive_on_check_range(d, "polynomial");
  return d;
}

SequenceDescriptor rational(const Polynomial& num, const Polynomial& den) {
  bool unit = (num.is_exact() && den.is_exact())
                  ? num.exact_coeffs()[0] == den.exact_coeffs()[0] && num.exact_coeffs()[0] != 0
                  : std::abs(num.coeffs()[0] - den.coeffs()[0]) <= 1e-14 * std::abs(den.coeffs()[0]) &&
                        den.coeffs()[0] != Complex(0.0);
  if (!unit) invalid("rational sequence requires w1(0) = w2(0) != 0");
  auto d = wrap(RationalSeq{num, den});
  require_positive_on_check_range(d, "rational");
  return d;
}

SequenceDescriptor power_sum(std::vector<Number> bases) {
  if (bases.empty()) invalid("power sum needs at least one base");
  for (const auto& a : bases)
    if (a.value().imag() != 0.0 || !(a.real() > 0.0) || !std::isfinite(a.real()))
      invalid("power sum bases must be positive reals");
  std::sort(bases.begin(), bases.end(), [](const Number& x, const Number& y) { return x.real() > y.real(); });
  for (std::size_t i = 1; i < bases.size(); ++i)
    if (!(bases[i].real() < bases[i - 1].real())) invalid("power sum bases must be distinct");
  Number scale(Rational(1, static_cast<long long>(bases.size())));
  return wrap(PowerSum{std::move(bases), scale});
}

SequenceDescriptor exp_polynomial(std::vector<ExpPolyTerm> terms) {
  if (terms.empty()) invalid("exp-polynomial needs at least one term");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& a = terms[i].base;
    if (a.value().imag() != 0.0 || !(a.real() > 0.0) || !std::isfinite(a.real()))
      invalid("exp-polynomial bases must be positive reals");
    if (i > 0 && !(terms[i - 1].base.real() < a.real())) invalid("exp-polynomial bases must be strictly increasing");
    if (terms[i].w.is_zero()) invalid("exp-polynomial weights must be nonzero");
  }
  bool exact = std::all_of(terms.begin(), terms.end(), [](const ExpPolyTerm& t) { return t.w.is_exact(); });
  Number scale;
  if (exact) {
    Rational s = 0;
    for (const auto& t : terms) s += t.w.exact_coeffs()[0];
    if (s <= 0) invalid("exp-polynomial requires sum w_i(0) > 0");
    scale = Number(Rational(1) / s);
  } else {
    Complex s = 0.0;
    for (const auto& t : terms) s += t.w.coeffs()[0];
    if (std::abs(s.imag()) > 1e-14 * std::abs(s) || !(s.real() > 0.0))
      invalid("exp-polynomial requires sum w_i(0) > 0");
    scale = Number(1.0 / s.real());
  }
  auto d = wrap(ExpPolynomial{std::move(terms), scale});
  require_positive_on_check_range(d, "exp-polynomial");
  return d;
}

SequenceDescriptor q_factorial(const Number& q) {
  if (q.value().imag() != 0.0 || !(q.real() >= 0.0 && q.real() < 1.0)) invalid("q-factorial requires q in [0,1)");
  return wrap(QFactorial{q});
}

SequenceDescriptor gamma_ratio(std::vector<double> a, std::vector<double> b, bool balanced) {
  for (double x : a)
    if (!(x > 0.0) || !std::isfinite(x)) invalid("gamma-ratio parameters must be positive");
  for (double x : b)
    if (!(x > 0.0) || !std::isfinite(x)) invalid("gamma-ratio parameters must be positive");
  if (balanced) {
    double sa = std::accumulate(a.begin(), a.end(), 0.0);
    double sb = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(sa - sb) > 1e-12) invalid("gamma-ratio requires sum a = sum b");
  }
  return wrap(GammaRatio{std::move(a), std::move(b), balanced});
}

SequenceDescriptor periodic(std::vector<Number> values) {
  if (values.empty()) invalid("periodic sequence needs a period");
  bool unit = values[0].is_exact() ? values[0].exact() == 1 : values[0].value() == Complex(1.0);
  if (!unit) invalid("periodic sequence requires c[0] = 1");
  for (const auto& v : values)
    if (v.value().imag() != 0.0 || !(v.real() > 0.0) || !std::isfinite(v.real()))
      invalid("periodic values must be positive reals");
  return wrap(Periodic{std::move(values)});
}

SequenceDescriptor q_gaussian(const Number& q, double s) {
  if (q.value().imag() != 0.0 || !(q.real() > 0.0) || !std::isfinite(q.real())) invalid("q must be positive");
  if (!std::isfinite(s)) invalid("q-gaussian exponent must be finite");
  return wrap(QGaussian{q, s});
}

SequenceDescriptor product(const SequenceDescriptor& left, const SequenceDescriptor& right) {
  return wrap(ProductSeq{left, right});
}

SequenceDescriptor inverse(const SequenceDescriptor& inner) { return wrap(InverseSeq{inner}); }

SequenceDescriptor sum(const SequenceDescriptor& left, const SequenceDescriptor& right) {
  return wrap(SumSeq{left, right});
}

SequenceDescriptor perturbed(const SequenceDescriptor& base, Tail tail) {
  switch (tail.kind) {
    case Tail::Kind::values:
      if (!tail.values.empty() && !tail.values[0].is_zero()) invalid("perturbation must vanish at n = 0");
      for (const auto& v : tail.values)
        if (v.value().imag() != 0.0 || !std::isfinite(v.real())) invalid("perturbation values must be real");
      break;
    case Tail::Kind::factorial:
      if (tail.coeff == 0.0 || !(tail.base > 0.0) || !(tail.power > 0.0)) invalid("bad factorial tail");
      break;
    case Tail::Kind::q_gaussian:
      if (tail.coeff == 0.0 || !(tail.q > 1.0) || !std::isfinite(tail.power)) invalid("bad q-gaussian tail");
      break;
  }
  auto d = wrap(PerturbedSeq{base, std::move(tail)});
  require_positive_on_check_range(d, "perturbed");
  return d;
}

// --- evaluation --------------------------------------------------------------

double seq_eval(const SequenceDescriptor& d, std::size_t n, const EvalOptions& opts) {
  check_range(n, opts);
  const double x = static_cast<double>(n);
  switch (d.kind()) {
    case Kind::geometric:
      return checked_positive(std::pow(d.as<Geometric>().a.real(), x), "geometric term");
    case Kind::polynomial:
      return positive_real(d.as<PolynomialSeq>().w(x), "polynomial value");
    case Kind::rational: {
      const auto& r = d.as<RationalSeq>();
      return positive_real(r.num(x) / r.den(x), "rational value");
    }
    case Kind::power_sum: {
      const auto& p = d.as<PowerSum>();
      double s = 0.0;
      for (const auto& a : p.bases) s += std::pow(a.real(), x);
      return checked_positive(p.scale.real() * s, "power sum");
    }
    case Kind::exp_poly: {
      const auto& e = d.as<ExpPolynomial>();
      Complex s = 0.0;
      for (const auto& t : e.terms) s += t.w(x) * std::pow(t.base.real(), x);
      return positive_real(e.scale.real() * s, "exp-polynomial value");
    }
    case Kind::q_factorial: {
      double q = d.as<QFactorial>().q.real();
      double acc = 1.0;
      double qj = 1.0;
      for (std::size_t j = 1; j <= n; ++j) {
        qj *= q;
        acc *= (1.0 - qj) / (1.0 - q);
      }
      return checked_positive(acc, "q-factorial");
    }
    case Kind::gamma_ratio:
    case Kind::q_gaussian:
      return checked_positive(std::exp(seq_log_eval(d, n, opts)), "sequence value");
    case Kind::periodic: {
      const auto& v = d.as<Periodic>().values;
      return v[n % v.size()].real();
    }
    case Kind::product: {
      const auto& p = d.as<ProductSeq>();
      double l = seq_eval(p.left, n, opts);
      double r = seq_eval(p.right, n, opts);
      double v = l * r;
      if (!std::isfinite(v) || v == 0.0) return checked_positive(std::exp(seq_log_eval(d, n, opts)), "product");
      return v;
    }
    case Kind::inverse: {
      double v = seq_eval(d.as<InverseSeq>().inner, n, opts);
      return checked_positive(1.0 / v, "inverse");
    }
    case Kind::sum: {
      if (n == 0) return 1.0;
      const auto& s = d.as<SumSeq>();
      return checked_positive(seq_eval(s.left, n, opts) + seq_eval(s.right, n, opts), "sum");
    }
    case Kind::perturbed: {
      const auto& p = d.as<PerturbedSeq>();
      return checked_positive(seq_eval(p.base, n, opts) + p.tail.value(n), "perturbed value");
    }
  }
  fail(ErrorCode::InvalidDescriptor, "unknown descriptor kind");
}

double seq_log_eval(const SequenceDescriptor& d, std::size_t n, const EvalOptions& opts) {
  check_range(n, opts);
  if (n == 0) return 0.0;  // m(0) = 1 for every node; skip log-sum-exp rounding
  const double x = static_cast<double>(n);
  switch (d.kind()) {
    case Kind::geometric:
      return x * std::log(d.as<Geometric>().a.real());
    case Kind::polynomial:
      return std::log(positive_real(d.as<PolynomialSeq>().w(x), "polynomial value"));
    case Kind::rational: {
      const auto& r = d.as<RationalSeq>();
      return std::log(positive_real(r.num(x) / r.den(x), "rational value"));
    }
    case Kind::power_sum: {
      const auto& p = d.as<PowerSum>();
      double acc = kNegInf;
      for (const auto& a : p.bases) acc = log_add(acc, x * std::log(a.real()));
      return std::log(p.scale.real()) + acc;
    }
    case Kind::exp_poly: {
      const auto& e = d.as<ExpPolynomial>();
      double top = kNegInf;
      for (const auto& t : e.terms) top = std::max(top, x * std::log(t.base.real()));
      Complex s = 0.0;
      for (const auto& t : e.terms) s += t.w(x) * std::exp(x * std::log(t.base.real()) - top);
      return std::log(e.scale.real()) + top + std::log(positive_real(s, "exp-polynomial value"));
    }
    case Kind::q_factorial:
      return qfactorial_log(d.as<QFactorial>().q.real(), n);
    case Kind::gamma_ratio: {
      const auto& g = d.as<GammaRatio>();
      double acc = 0.0;
      for (double a : g.a) acc += std::lgamma(1.0 + a * x);
      for (double b : g.b) acc -= std::lgamma(1.0 + b * x);
      return acc;
    }
    case Kind::periodic: {
      const auto& v = d.as<Periodic>().values;
      return std::log(v[n % v.size()].real());
    }
    case Kind::q_gaussian: {
      const auto& g = d.as<QGaussian>();
      return g.s * 0.5 * x * (x - 1.0) * std::log(g.q.real());
    }
    case Kind::product: {
      const auto& p = d.as<ProductSeq>();
      return seq_log_eval(p.left, n, opts) + seq_log_eval(p.right, n, opts);
    }
    case Kind::inverse:
      return -seq_log_eval(d.as<InverseSeq>().inner, n, opts);
    case Kind::sum: {
      if (n == 0) return 0.0;
      const auto& s = d.as<SumSeq>();
      return log_add(seq_log_eval(s.left, n, opts), seq_log_eval(s.right, n, opts));
    }
    case Kind::perturbed: {
      const auto& p = d.as<PerturbedSeq>();
      double lb = seq_log_eval(p.base, n, opts);
      int sg = p.tail.sign(n);
      if (sg == 0) return lb;
      double lr = p.tail.log_abs(n);
      if (sg > 0) return log_add(lb, lr);
      double ratio = std::exp(lr - lb);
      if (ratio >= 1.0) fail(ErrorCode::NonPositiveValue, "perturbed value is not positive");
      return lb + std::log1p(-ratio);
    }
  }
  fail(ErrorCode::InvalidDescriptor, "unknown descriptor kind");
}

Rational seq_eval_exact(const SequenceDescriptor& d, std::size_t n, const EvalOptions& opts) {
  check_range(n, opts);
  if (!d.exact_capable()) fail(ErrorCode::NotExact, std::string(kind_name(d.kind())) + " has no exact evaluation");
  const Rational x(static_cast<long long>(n));
  auto positive = [](Rational v, const char* what) {
    if (v <= 0) fail(ErrorCode::NonPositiveValue, std::string(what) + " is not positive");
    return v;
  };
  switch (d.kind()) {
    case Kind::geometric:
      return rpow(d.as<Geometric>().a.exact(), n);
    case Kind::polynomial:
      return positive(d.as<PolynomialSeq>().w.eval_exact(x), "polynomial value");
    case Kind::rational: {
      const auto& r = d.as<RationalSeq>();
      Rational den = r.den.eval_exact(x);
      if (den == 0) fail(ErrorCode::NonPositiveValue, "rational denominator vanishes");
      return positive(r.num.eval_exact(x) / den, "rational value");
    }
    case Kind::power_sum: {
      const auto& p = d.as<PowerSum>();
      Rational s = 0;
      for (const auto& a : p.bases) s += rpow(a.exact(), n);
      return p.scale.exact() * s;
    }
    case Kind::exp_poly: {
      const auto& e = d.as<ExpPolynomial>();
      Rational s = 0;
      for (const auto& t : e.terms) s += t.w.eval_exact(x) * rpow(t.base.exact(), n);
      return positive(e.scale.exact() * s, "exp-polynomial value");
    }
    case Kind::q_factorial: {
      const Rational& q = d.as<QFactorial>().q.exact();
      Rational acc = 1;
      Rational bracket = 0;
      Rational qj = 1;
      for (std::size_t j = 1; j <= n; ++j) {
        bracket += qj;
        qj *= q;
        acc *= bracket;
      }
      return acc;
    }
    case Kind::gamma_ratio: {
      const auto& g = d.as<GammaRatio>();
      Rational acc = 1;
      for (double a : g.a) acc *= Rational(factorial(static_cast<std::size_t>(a) * n));
      for (double b : g.b) acc /= Rational(factorial(static_cast<std::size_t>(b) * n));
      return acc;
    }
    case Kind::periodic: {
      const auto& v = d.as<Periodic>().values;
      return v[n % v.size()].exact();
    }
    case Kind::q_gaussian: {
      const auto& g = d.as<QGaussian>();
      long long e = static_cast<long long>(g.s) * static_cast<long long>(n * (n == 0 ? 0 : n - 1) / 2);
      Rational base = g.q.exact();
      if (e < 0) {
        base = Rational(1) / base;
        e = -e;
      }
      return rpow(base, static_cast<std::size_t>(e));
    }
    case Kind::product: {
      const auto& p = d.as<ProductSeq>();
      return seq_eval_exact(p.left, n, opts) * seq_eval_exact(p.right, n, opts);
    }
    case Kind::inverse:
      return Rational(1) / seq_eval_exact(d.as<InverseSeq>().inner, n, opts);
    case Kind::sum: {
      if (n == 0) return Rational(1);
      const auto& s = d.as<SumSeq>();
      return seq_eval_exact(s.left, n, opts) + seq_eval_exact(s.right, n, opts);
    }
    case Kind::perturbed: {
      const auto& p = d.as<PerturbedSeq>();
      Rational r = n < p.tail.values.size() ? p.tail.values[n].exact() : Rational(0);
      return positive(seq_eval_exact(p.base, n, opts) + r, "perturbed value");
    }
  }
  fail(ErrorCode::InvalidDescriptor, "unknown descriptor kind");
}

std::optional<double> growth_rate(const SequenceDescriptor& d) {
  switch (d.kind()) {
    case Kind::geometric: return d.as<Geometric>().a.real();
    case Kind::polynomial:
    case Kind::rational:
    case Kind::periodic: return 1.0;
    case Kind::power_sum: return d.as<PowerSum>().bases.front().real();
    case Kind::exp_poly: return d.as<ExpPolynomial>().terms.back().base.real();
    case Kind::q_factorial: return 1.0 / (1.0 - d.as<QFactorial>().q.real());
    case Kind::gamma_ratio: {
      const auto& g = d.as<GammaRatio>();
      if (!g.balanced) return std::nullopt;
      double l = 0.0;
      for (double a : g.a) l += a * std::log(a);
      for (double b : g.b) l -= b * std::log(b);
      return std::exp(l);
    }
    case Kind::q_gaussian: return std::nullopt;
    case Kind::product: {
      auto l = growth_rate(d.as<ProductSeq>().left);
      auto r = growth_rate(d.as<ProductSeq>().right);
      if (!l || !r) return std::nullopt;
      return *l * *r;
    }
    case Kind::inverse: {
      auto r = growth_rate(d.as<InverseSeq>().inner);
      if (!r) return std::nullopt;
      return 1.0 / *r;
    }
    case Kind::sum: {
      auto l = growth_rate(d.as<SumSeq>().left);
      auto r = growth_rate(d.as<SumSeq>().right);
      if (!l || !r) return std::nullopt;
      return std::max(*l, *r);
    }
    case Kind::perturbed: return growth_rate(d.as<PerturbedSeq>().base);
  }
  return std::nullopt;
}

}  // namespace summa::seq
