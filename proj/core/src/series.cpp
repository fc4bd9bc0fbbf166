#include "summa/seqcore/series.hpp"

#include <cmath>

#include "summa/error.hpp"

namespace summa::seq {

namespace {

void check_finite(const std::vector<Complex>& c) {
  for (const auto& v : c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorCode::InvalidArgument, "series coefficients must be finite");
}

void check_finite(const std::vector<Rational>&) {}

BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

template <typename T>
BasicSeries<T>::BasicSeries() : coeffs_{T(0)} {}

template <typename T>
BasicSeries<T>::BasicSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorCode::EmptySeries, "a series needs at least one coefficient");
  check_finite(coeffs_);
}

template class BasicSeries<Complex>;
template class BasicSeries<Rational>;

TruncatedSeries to_float(const ExactSeries& s) {
  std::vector<Complex> c;
  for (const auto& q : s.coeffs()) c.emplace_back(to_double(q), 0.0);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries borel(const SequenceDescriptor& m, const TruncatedSeries& u) {
  std::vector<Complex> out(u.size());
  EvalOptions opts;
  opts.n_max = std::max(opts.n_max, u.degree());
  for (std::size_t n = 0; n < u.size(); ++n) {
    if (u[n] == Complex(0.0)) continue;
    double v = 0.0;
    bool direct = true;
    try {
      v = seq_eval(m, n, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      direct = false;
    }
    if (direct && v > 0.0 && std::isfinite(v) && v > 1e-300) {
      out[n] = u[n] / v;
    } else {
      out[n] = u[n] * std::exp(-seq_log_eval(m, n, opts));
    }
  }
  return TruncatedSeries(std::move(out));
}

ExactSeries borel(const SequenceDescriptor& m, const ExactSeries& u) {
  std::vector<Rational> out(u.size());
  EvalOptions opts;
  opts.n_max = std::max(opts.n_max, u.degree());
  for (std::size_t n = 0; n < u.size(); ++n) out[n] = u[n] / seq_eval_exact(m, n, opts);
  return ExactSeries(std::move(out));
}

TruncatedSeries q_borel(double s, double q, const TruncatedSeries& u) {
  if (!(q > 1.0) || !(s > 0.0)) fail(ErrorCode::InvalidArgument, "q_borel requires q > 1 and s > 0");
  std::vector<Complex> out(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) {
    double e = s * 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
    double f = std::pow(q, -e);
    if (f == 0.0 || !std::isfinite(f)) f = std::exp(-e * std::log(q));
    out[n] = u[n] * f;
  }
  return TruncatedSeries(std::move(out));
}

double moment_ratio(const SequenceDescriptor& m, bool factorial_weight, std::size_t b, std::size_t a) {
  EvalOptions opts;
  opts.n_max = std::max({opts.n_max, a, b});
  double r = 0.0;
  bool direct = true;
  try {
    r = seq_eval(m, b, opts) / seq_eval(m, a, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    direct = false;
  }
  if (!direct || !std::isfinite(r) || r == 0.0) r = std::exp(seq_log_eval(m, b, opts) - seq_log_eval(m, a, opts));
  if (factorial_weight) {
    if (b >= a) {
      for (std::size_t k = a + 1; k <= b; ++k) r *= static_cast<double>(k);
    } else {
      for (std::size_t k = b + 1; k <= a; ++k) r /= static_cast<double>(k);
    }
  }
  return r;
}

Rational moment_ratio_exact(const SequenceDescriptor& m, bool factorial_weight, std::size_t b, std::size_t a) {
  EvalOptions opts;
  opts.n_max = std::max({opts.n_max, a, b});
  Rational r = seq_eval_exact(m, b, opts) / seq_eval_exact(m, a, opts);
  if (factorial_weight) r *= Rational(factorial(b), factorial(a));
  return r;
}

TruncatedSeries moment_derivative(const SequenceDescriptor& m, bool factorial_weight, const TruncatedSeries& u) {
  if (u.degree() == 0) fail(ErrorCode::EmptySeries, "moment derivative needs degree >= 1");
  std::vector<Complex> out(u.degree());
  for (std::size_t n = 0; n < u.degree(); ++n) out[n] = moment_ratio(m, factorial_weight, n + 1, n) * u[n + 1];
  return TruncatedSeries(std::move(out));
}

ExactSeries moment_derivative(const SequenceDescriptor& m, bool factorial_weight, const ExactSeries& u) {
  if (u.degree() == 0) fail(ErrorCode::EmptySeries, "moment derivative needs degree >= 1");
  std::vector<Rational> out(u.degree());
  for (std::size_t n = 0; n < u.degree(); ++n) out[n] = moment_ratio_exact(m, factorial_weight, n + 1, n) * u[n + 1];
  return ExactSeries(std::move(out));
}

Json series_to_json(const TruncatedSeries& s) {
  Json arr = Json::array();
  for (const auto& c : s.coeffs()) arr.push_back(Json::array({c.real(), c.imag()}));
  return arr;
}

Json series_to_json(const ExactSeries& s) {
  Json arr = Json::array();
  for (const auto& c : s.coeffs()) arr.push_back(number_to_json(Number(c)));
  return arr;
}

TruncatedSeries series_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "series must be an array");
  std::vector<Complex> c;
  for (const auto& x : j) c.push_back(number_from_json(x).value());
  return TruncatedSeries(std::move(c));
}

ExactSeries exact_series_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "series must be an array");
  std::vector<Rational> c;
  for (const auto& x : j) {
    Number n = number_from_json(x);
    if (!n.is_exact()) fail(ErrorCode::NotExact, "exact series entries must be integers or rationals");
    c.push_back(n.exact());
  }
  return ExactSeries(std::move(c));
}

}  // namespace summa::seq
