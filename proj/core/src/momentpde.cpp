#include "summa/momentpde/momentpde.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "summa/error.hpp"
#include "summa/seqcore/descriptor_json.hpp"

namespace summa::pde {

namespace {

template <typename T>
struct Arith;

template <>
struct Arith<Rational> {
  static Rational from(const Number& n) {
    if (!n.is_exact()) fail(ErrorCode::NotExact, "coefficient is not an exact rational");
    return n.exact();
  }
  // mu(b) / mu(a) with mu(n) = m(n) n!
  static Rational mu_ratio(const seq::SequenceDescriptor& m, std::size_t b, std::size_t a) {
    return seq::moment_ratio_exact(m, true, b, a);
  }
  static Rational m_value(const seq::SequenceDescriptor& m, std::size_t n) {
    return seq::moment_ratio_exact(m, false, n, 0);
  }
};

template <>
struct Arith<Complex> {
  static Complex from(const Number& n) { return n.value(); }
  static Complex mu_ratio(const seq::SequenceDescriptor& m, std::size_t b, std::size_t a) {
    return seq::moment_ratio(m, true, b, a);
  }
  static Complex m_value(const seq::SequenceDescriptor& m, std::size_t n) { return seq::moment_ratio(m, false, n, 0); }
};

using Key = std::pair<unsigned, unsigned>;

std::map<Key, Number> merge_terms(const std::vector<PTerm>& P) {
  std::map<Key, Number> out;
  for (const auto& t : P) {
    Key k{t.lambda_pow, t.zeta_pow};
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, t.coeff);
    } else if (it->second.is_exact() && t.coeff.is_exact()) {
      it->second = Number(Rational(it->second.exact() + t.coeff.exact()));
    } else {
      it->second = Number(it->second.value() + t.coeff.value());
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

unsigned lambda_degree(const std::map<Key, Number>& terms) {
  unsigned p = 0;
  for (const auto& [k, c] : terms) p = std::max(p, k.first);
  return p;
}

unsigned zeta_degree_of(const std::map<Key, Number>& terms) {
  unsigned d = 0;
  for (const auto& [k, c] : terms) d = std::max(d, k.second);
  return d;
}

void check_operator(const std::map<Key, Number>& terms) {
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "P has no nonzero terms");
  const unsigned p = lambda_degree(terms);
  if (p == 0) fail(ErrorCode::InvalidArgument, "P must contain a positive power of lambda");
  for (const auto& [k, c] : terms)
    if (k.first == p && k.second > 0)
      fail(ErrorCode::LeadingCoefficientNotConstant,
           "the coefficient of lambda^" + std::to_string(p) + " depends on zeta");
  if (!terms.count({p, 0u})) fail(ErrorCode::LeadingCoefficientNotConstant, "leading lambda coefficient vanishes");
}

// P_i(zeta) as coefficient rows indexed by [i][zeta power]
template <typename T>
std::vector<std::vector<T>> coefficient_rows(const std::map<Key, Number>& terms) {
  const unsigned p = lambda_degree(terms), dz = zeta_degree_of(terms);
  std::vector<std::vector<T>> rows(p + 1, std::vector<T>(dz + 1, T(0)));
  for (const auto& [k, c] : terms) rows[k.first][k.second] = Arith<T>::from(c);
  return rows;
}

// sum_k c_k d_z^k v, truncated at the degree of v
template <typename T>
std::vector<T> apply_zeta(const std::vector<T>& c, const std::vector<T>& v) {
  const std::size_t M = v.size();
  std::vector<T> out(M, T(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == T(0)) continue;
    for (std::size_t j = 0; j + k < M; ++j) {
      T f = v[j + k];
      for (std::size_t i = 1; i <= k; ++i) f *= T(static_cast<long long>(j + i));
      out[j] += c[k] * f;
    }
  }
  return out;
}

template <typename T>
BasicBivariate<T> pack(std::vector<std::vector<T>> rows) {
  std::vector<seq::BasicSeries<T>> levels;
  levels.reserve(rows.size());
  for (auto& r : rows) levels.emplace_back(std::move(r));
  return BasicBivariate<T>(std::move(levels));
}

template <typename T>
BasicBivariate<T> solve_impl(const CauchyProblem& cp) {
  validate(cp);
  const auto terms = merge_terms(cp.P);
  const auto rows = coefficient_rows<T>(terms);
  const std::size_t p = rows.size() - 1, N = cp.N, M = cp.M;
  const T lead = rows[p][0];

  std::vector<std::vector<T>> u(N + 1, std::vector<T>(M + 1, T(0)));
  // d^j u(0, z) = mu(j)/mu(0) u_j
  for (std::size_t j = 0; j < p && j <= N; ++j) {
    const T w = Arith<T>::mu_ratio(cp.m, 0, j);
    for (std::size_t k = 0; k <= M && k < cp.phi[j].size(); ++k) u[j][k] = Arith<T>::from(cp.phi[j][k]) * w;
  }
  for (std::size_t n = 0; n + p <= N; ++n) {
    std::vector<T> acc(M + 1, T(0));
    for (std::size_t i = 0; i < p; ++i) {
      const T w = Arith<T>::mu_ratio(cp.m, n + i, n + p);
      auto v = apply_zeta(rows[i], u[n + i]);
      for (std::size_t k = 0; k <= M; ++k) acc[k] += w * v[k];
    }
    for (std::size_t k = 0; k <= M; ++k) u[n + p][k] = -acc[k] / lead;
  }
  return pack(std::move(u));
}

template <typename T>
BasicBivariate<T> borel_impl(const seq::SequenceDescriptor& m, const BasicBivariate<T>& u) {
  std::vector<std::vector<T>> rows;
  for (std::size_t n = 0; n < u.levels(); ++n) {
    const T w = Arith<T>::m_value(m, n);
    std::vector<T> r = u[n].coeffs();
    for (auto& x : r) x /= w;
    rows.push_back(std::move(r));
  }
  return pack(std::move(rows));
}

template <typename T>
BasicBivariate<T> apply_impl(const std::vector<PTerm>& P, const seq::SequenceDescriptor& m, const BasicBivariate<T>& u) {
  const auto terms = merge_terms(P);
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "P has no nonzero terms");
  const auto rows = coefficient_rows<T>(terms);
  const std::size_t p = rows.size() - 1;
  std::vector<std::vector<T>> out;
  for (std::size_t n = 0; n + p < u.levels(); ++n) {
    std::vector<T> acc(u.z_degree() + 1, T(0));
    for (std::size_t i = 0; i <= p; ++i) {
      const T w = Arith<T>::mu_ratio(m, n + i, n);
      auto v = apply_zeta(rows[i], u[n + i].coeffs());
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * v[k];
    }
    out.push_back(std::move(acc));
  }
  return pack(std::move(out));
}

void check_shapes(std::size_t la, std::size_t lb, std::size_t za, std::size_t zb) {
  if (la != lb || za != zb) fail(ErrorCode::ShapeMismatch, "series shapes differ");
}

template <typename T>
std::vector<T> derivative(const std::vector<T>& u) {
  if (u.size() < 2) fail(ErrorCode::EmptySeries, "derivative needs degree >= 1");
  std::vector<T> out(u.size() - 1);
  for (std::size_t n = 0; n + 1 < u.size(); ++n) out[n] = T(static_cast<long long>(n + 1)) * u[n + 1];
  return out;
}

template <typename T>
std::vector<T> shift(const std::vector<T>& u) {
  if (u.size() < 2) fail(ErrorCode::EmptySeries, "shift needs degree >= 1");
  return std::vector<T>(u.begin() + 1, u.end());
}

template <typename T>
std::vector<T> central_impl(const std::vector<T>& u) {
  auto d = derivative(u);
  auto s = shift(u);
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = T(4) * d[n] - T(2) * s[n];
  return d;
}

template <typename T>
std::vector<T> q_impl(const T& q, const std::vector<T>& u) {
  if (q == T(1)) fail(ErrorCode::InvalidArgument, "q-difference needs q != 1");
  if (u.size() < 2) fail(ErrorCode::EmptySeries, "q-difference needs degree >= 1");
  // v = t d_t u, then (v(qt) - v(t)) / ((q - 1) t)
  std::vector<T> v(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) v[n] = T(static_cast<long long>(n)) * u[n];
  std::vector<T> out(u.size() - 1);
  T qn = q;
  for (std::size_t n = 1; n < u.size(); ++n) {
    out[n - 1] = v[n] * (qn - T(1)) / (q - T(1));
    qn *= q;
  }
  return out;
}

template <typename T>
std::vector<T> exp_poly_impl(const T& a, unsigned p, std::vector<T> u) {
  for (unsigned r = 0; r < p; ++r) {
    // t^-1 d_t^-1: antiderivative then divide by t
    std::vector<T> anti(u.size() + 1, T(0));
    for (std::size_t n = 0; n < u.size(); ++n) anti[n + 1] = u[n] / T(static_cast<long long>(n + 1));
    for (std::size_t n = 0; n < u.size(); ++n) u[n] += anti[n + 1];
  }
  auto d = derivative(u);
  for (auto& x : d) x *= a;
  return d;
}

// central binomial numbers C(2n, n) in double
std::vector<double> central_binomials(std::size_t n) {
  std::vector<double> c(n + 1, 1.0);
  for (std::size_t k = 1; k <= n; ++k)
    c[k] = c[k - 1] * static_cast<double>(2 * (2 * k - 1)) / static_cast<double>(k);
  return c;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// w_n = u_n(z0) / n!
seq::TruncatedSeries borel_trace(const BivariateSeries& u, Complex z0) {
  std::vector<Complex> w(u.levels());
  double fact = 1.0;
  for (std::size_t n = 0; n < u.levels(); ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    w[n] = (z0 == Complex(0.0) ? u.at(n, 0) : horner(u[n].coeffs(), z0)) / fact;
  }
  return seq::TruncatedSeries(std::move(w));
}

seq::TruncatedSeries borel_trace_exact(const ExactBivariate& u) {
  std::vector<Complex> w(u.levels());
  BigInt fact = 1;
  for (std::size_t n = 0; n < u.levels(); ++n) {
    if (n > 0) fact *= static_cast<unsigned long>(n);
    w[n] = to_double(Rational(u.at(n, 0) / Rational(fact)));
  }
  return seq::TruncatedSeries(std::move(w));
}

}  // namespace

template <typename T>
BasicBivariate<T>::BasicBivariate(std::vector<seq::BasicSeries<T>> levels) : levels_(std::move(levels)) {
  for (const auto& l : levels_)
    if (l.degree() != levels_.front().degree()) fail(ErrorCode::ShapeMismatch, "t-levels must share one z-degree");
}

template class BasicBivariate<Complex>;
template class BasicBivariate<Rational>;

BivariateSeries to_float(const ExactBivariate& u) {
  std::vector<seq::TruncatedSeries> levels;
  for (const auto& l : u.data()) levels.push_back(seq::to_float(l));
  return BivariateSeries(std::move(levels));
}

Json bivariate_to_json(const BivariateSeries& u) {
  Json arr = Json::array();
  for (const auto& l : u.data()) arr.push_back(seq::series_to_json(l));
  return arr;
}

Json bivariate_to_json(const ExactBivariate& u) {
  Json arr = Json::array();
  for (const auto& l : u.data()) arr.push_back(seq::series_to_json(l));
  return arr;
}

std::size_t CauchyProblem::order() const { return lambda_degree(merge_terms(P)); }
std::size_t CauchyProblem::zeta_degree() const { return zeta_degree_of(merge_terms(P)); }

bool CauchyProblem::exact_capable() const {
  if (!m.exact_capable()) return false;
  for (const auto& t : P)
    if (!t.coeff.is_exact()) return false;
  for (const auto& f : phi)
    for (const auto& c : f)
      if (!c.is_exact()) return false;
  return true;
}

void validate(const CauchyProblem& cp) {
  const auto terms = merge_terms(cp.P);
  check_operator(terms);
  const std::size_t p = lambda_degree(terms);
  if (cp.phi.size() != p)
    fail(ErrorCode::InvalidArgument,
         "expected " + std::to_string(p) + " initial functions, got " + std::to_string(cp.phi.size()));
  const std::size_t dz = zeta_degree_of(terms);
  if (cp.N * dz > cp.M)
    fail(ErrorCode::TruncationStarved, "z-degree " + std::to_string(cp.M) + " is below N * deg_zeta = " +
                                           std::to_string(cp.N * dz));
}

CauchyProblem problem_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "problem must be a JSON object");
  for (const char* key : {"P", "phi"})
    if (!j.contains(key)) fail(ErrorCode::ParseError, std::string("problem is missing '") + key + "'");
  CauchyProblem cp;
  const Json& P = j.at("P");
  if (!P.is_array()) fail(ErrorCode::ParseError, "P must be an array of terms");
  for (const auto& t : P) {
    if (!t.is_object() || !t.contains("lambda_pow") || !t.contains("zeta_pow") || !t.contains("coeff"))
      fail(ErrorCode::ParseError, "P terms need lambda_pow, zeta_pow and coeff");
    if (!t.at("lambda_pow").is_number_unsigned() || !t.at("zeta_pow").is_number_unsigned())
      fail(ErrorCode::ParseError, "powers must be non-negative integers");
    cp.P.push_back({t.at("lambda_pow").get<unsigned>(), t.at("zeta_pow").get<unsigned>(),
                    number_from_json(t.at("coeff"))});
  }
  if (j.contains("m")) cp.m = seq::descriptor_from_json(j.at("m"));
  const Json& phi = j.at("phi");
  if (!phi.is_array()) fail(ErrorCode::ParseError, "phi must be an array of coefficient arrays");
  for (const auto& f : phi) {
    if (!f.is_array()) fail(ErrorCode::ParseError, "each phi_j must be a coefficient array");
    std::vector<Number> c;
    for (const auto& x : f) c.push_back(number_from_json(x));
    cp.phi.push_back(std::move(c));
  }
  auto read_size = [&](const char* key, std::size_t def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number_unsigned()) fail(ErrorCode::ParseError, std::string(key) + " must be a non-negative integer");
    return j.at(key).get<std::size_t>();
  };
  cp.N = read_size("N", cp.N);
  cp.M = read_size("M", cp.M);
  if (j.contains("z0")) cp.z0 = number_from_json(j.at("z0")).value();
  return cp;
}

Json problem_to_json(const CauchyProblem& cp) {
  Json P = Json::array();
  for (const auto& t : cp.P)
    P.push_back({{"lambda_pow", t.lambda_pow}, {"zeta_pow", t.zeta_pow}, {"coeff", number_to_json(t.coeff)}});
  Json phi = Json::array();
  for (const auto& f : cp.phi) {
    Json arr = Json::array();
    for (const auto& c : f) arr.push_back(number_to_json(c));
    phi.push_back(std::move(arr));
  }
  Json j{{"P", P}, {"m", seq::to_json(cp.m)}, {"phi", phi}, {"N", cp.N}, {"M", cp.M}};
  if (cp.z0 != Complex(0.0)) j["z0"] = number_to_json(Number(cp.z0));
  return j;
}

std::vector<PTerm> heat_operator() { return {{1, 0, Number(1)}, {0, 2, Number(-1)}}; }

bool is_heat_operator(const std::vector<PTerm>& P) {
  const auto terms = merge_terms(P);
  if (terms.size() != 2) return false;
  auto a = terms.find({1u, 0u}), b = terms.find({0u, 2u});
  if (a == terms.end() || b == terms.end()) return false;
  return a->second.value() == Complex(1.0) && b->second.value() == Complex(-1.0);
}

BivariateSeries solve_formal(const CauchyProblem& cp) { return solve_impl<Complex>(cp); }

ExactBivariate solve_formal_exact(const CauchyProblem& cp) {
  if (!cp.exact_capable()) fail(ErrorCode::NotExact, "problem has non-exact coefficients or sequence");
  return solve_impl<Rational>(cp);
}

CauchyProblem classical(const CauchyProblem& cp) {
  CauchyProblem out = cp;
  out.m = seq::one();
  return out;
}

BivariateSeries borel_t(const seq::SequenceDescriptor& m, const BivariateSeries& u) { return borel_impl(m, u); }
ExactBivariate borel_t(const seq::SequenceDescriptor& m, const ExactBivariate& u) { return borel_impl(m, u); }

BivariateSeries apply_operator(const std::vector<PTerm>& P, const seq::SequenceDescriptor& m, const BivariateSeries& u) {
  return apply_impl(P, m, u);
}
ExactBivariate apply_operator(const std::vector<PTerm>& P, const seq::SequenceDescriptor& m, const ExactBivariate& u) {
  return apply_impl(P, m, u);
}

Prop9Check check_prop9(const BivariateSeries& u_hat, const BivariateSeries& v_hat, const seq::SequenceDescriptor& m,
                       double tol) {
  check_shapes(u_hat.levels(), v_hat.levels(), u_hat.z_degree(), v_hat.z_degree());
  Prop9Check out;
  for (std::size_t n = 0; n < u_hat.levels(); ++n) {
    const double mn = seq::moment_ratio(m, false, n, 0);
    for (std::size_t j = 0; j <= u_hat.z_degree(); ++j) {
      const Complex w = v_hat.at(n, j) / mn;
      out.max_residual = std::max(out.max_residual, std::abs(u_hat.at(n, j) - w) / std::max(std::abs(w), 1.0));
    }
  }
  out.holds = out.max_residual <= tol;
  return out;
}

Prop9Check check_prop9(const ExactBivariate& u_hat, const ExactBivariate& v_hat, const seq::SequenceDescriptor& m) {
  check_shapes(u_hat.levels(), v_hat.levels(), u_hat.z_degree(), v_hat.z_degree());
  Prop9Check out;
  for (std::size_t n = 0; n < u_hat.levels(); ++n) {
    const Rational mn = seq::moment_ratio_exact(m, false, n, 0);
    for (std::size_t j = 0; j <= u_hat.z_degree(); ++j) {
      const Rational w = v_hat.at(n, j) / mn;
      if (u_hat.at(n, j) == w) continue;
      out.holds = false;
      const double d = std::abs(to_double(Rational(u_hat.at(n, j) - w)));
      out.max_residual = std::max(out.max_residual, d / std::max(std::abs(to_double(w)), 1.0));
    }
  }
  return out;
}

seq::ExactSeries central_binomial_operator(const seq::ExactSeries& u) {
  return seq::ExactSeries(central_impl(u.coeffs()));
}
seq::TruncatedSeries central_binomial_operator(const seq::TruncatedSeries& u) {
  return seq::TruncatedSeries(central_impl(u.coeffs()));
}
seq::ExactSeries q_derivative_operator(const Rational& q, const seq::ExactSeries& u) {
  return seq::ExactSeries(q_impl(q, u.coeffs()));
}
seq::TruncatedSeries q_derivative_operator(double q, const seq::TruncatedSeries& u) {
  return seq::TruncatedSeries(q_impl(Complex(q), u.coeffs()));
}
seq::ExactSeries exp_poly_operator(const Rational& a, unsigned p, const seq::ExactSeries& u) {
  return seq::ExactSeries(exp_poly_impl(a, p, u.coeffs()));
}
seq::TruncatedSeries exp_poly_operator(double a, unsigned p, const seq::TruncatedSeries& u) {
  return seq::TruncatedSeries(exp_poly_impl(Complex(a), p, u.coeffs()));
}

HeatProbeReport heat_summability_probe(const seq::SequenceDescriptor& m, const std::vector<Number>& phi, Complex z0,
                                       const std::vector<double>& directions, const HeatProbeOptions& opts) {
  if (phi.empty()) fail(ErrorCode::InvalidArgument, "heat probe needs initial data");
  const std::size_t levels = opts.polynomial_data ? opts.terms : std::min(opts.terms, (phi.size() - 1) / 2);
  if (levels < 1) fail(ErrorCode::InvalidArgument, "initial data too short for the heat probe");
  CauchyProblem cp;
  cp.P = heat_operator();
  cp.m = m;
  cp.phi = {phi};
  cp.N = levels;
  cp.M = std::max(phi.size() - 1, 2 * levels);
  cp.z0 = z0;

  HeatProbeReport rep;
  const CauchyProblem base = classical(cp);
  const bool exact_trace = z0 == Complex(0.0);
  if (exact_trace && base.exact_capable()) {
    rep.w_classical = borel_trace_exact(solve_formal_exact(base));
  } else {
    rep.w_classical = borel_trace(solve_formal(base), z0);
  }
  if (exact_trace && cp.exact_capable()) {
    rep.w = borel_trace_exact(solve_formal_exact(cp));
  } else {
    rep.w = borel_trace(solve_formal(cp), z0);
  }

  const auto& c = rep.w_classical;
  const std::size_t N = c.degree();
  try {
    seq::Window win{std::min<std::size_t>(16, N / 2), N};
    if (win.lo < win.hi) rep.disc = seq::gevrey_order_estimate(c, win);
  } catch (const Error&) {
    rep.disc.reset();
  }

  std::size_t last = 0;
  bool any = false;
  for (std::size_t n = 0; n <= N; ++n)
    if (c[n] != Complex(0.0)) {
      last = n;
      any = true;
    }
  if (any && last + 4 <= N) {
    // finite support: w is a polynomial, entire
    std::vector<Complex> coeffs(c.coeffs().begin(), c.coeffs().begin() + static_cast<std::ptrdiff_t>(last + 1));
    rep.closed_form = "polynomial";
    rep.evaluator = cont::ContinuationEvaluator::custom(
        "heat:polynomial", [coeffs](Complex t) { return horner(coeffs, t); }, HUGE_VAL,
        [coeffs](std::size_t n) { return n < coeffs.size() ? coeffs[n] : Complex(0.0); });
  } else if (any && N >= 4) {
    // w_n = a rho^n C(2n, n)  <=>  w = a (1 - 4 rho t)^(-1/2)
    const auto cb = central_binomials(N);
    const Complex a = c[0];
    bool match = a != Complex(0.0);
    Complex rho = match ? (c[1] / cb[1]) / a : Complex(0.0);
    for (std::size_t n = 1; match && n < N; ++n) {
      const Complex g0 = c[n] / cb[n], g1 = c[n + 1] / cb[n + 1];
      if (g0 == Complex(0.0) || std::abs(g1 / g0 - rho) > 1e-9 * std::abs(rho)) match = false;
    }
    if (match && std::abs(rho.imag()) <= 1e-12 * std::abs(rho) && rho.real() > 0.0) {
      const double r = rho.real();
      rep.closed_form = "central_binomial";
      rep.evaluator = cont::ContinuationEvaluator::custom(
          "heat:central_binomial", [a, r](Complex t) { return a / std::sqrt(1.0 - 4.0 * r * t); }, 0.25 / r,
          [a, r](std::size_t n) {
            double v = 1.0;
            for (std::size_t k = 1; k <= n; ++k) v *= r * static_cast<double>(2 * (2 * k - 1)) / static_cast<double>(k);
            return a * v;
          });
    }
  }

  if (!rep.evaluator) {
    rep.note = std::string(error_code_name(ErrorCode::UnrecognizedClosedForm)) +
               ": no registry entry matches the Borel transform; reporting the disc-only Gevrey estimate";
    return rep;
  }
  std::vector<cont::Ray> rays;
  for (double th : directions) rays.push_back(cont::Ray::log_spaced(th, opts.r_min, opts.r_max, opts.points));
  if (!rays.empty()) rep.scan = cont::growth_scan(*rep.evaluator, rays, opts.scan);
  return rep;
}

}  // namespace summa::pde
