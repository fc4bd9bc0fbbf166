#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include "detail/kernel.hpp"
#include "summa/error.hpp"
#include "summa/seqcore/descriptor_json.hpp"
#include "summa/specfun/generating.hpp"
#include "summa/specfun/partial_fractions.hpp"
#include "summa/specfun/rational_gen.hpp"

namespace summa::cont {

using namespace seq;
using specfun::check_off_cut;

namespace detail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Complex one_over_one_minus(Complex x) { return 1.0 / (Complex(1.0) - x); }

// Sum of sign_n exp(L_n) e^{i n theta} with L_n = log|c_n| + n log|z|,
// evaluated around the peak. Used for entire tails.
struct LogTerm {
  double log_abs;
  int sign;
};

Complex scaled_series(const std::function<LogTerm(std::size_t)>& coeff, Complex z, std::size_t start,
                      std::size_t max_terms) {
  if (z == Complex(0.0)) {
    if (start > 0) return 0.0;
    auto c = coeff(0);
    return c.sign == 0 ? Complex(0.0) : c.sign * std::exp(c.log_abs);
  }
  const double lz = std::log(std::abs(z));
  const double th = std::arg(z);
  std::vector<LogTerm> terms;
  double peak = kNegInf;
  double prev = kNegInf;
  for (std::size_t n = start;; ++n) {
    if (n - start >= max_terms) fail(ErrorCode::TermBudgetExceeded, "tail series did not converge within budget");
    LogTerm c = coeff(n);
    double L = c.sign == 0 ? kNegInf : c.log_abs + static_cast<double>(n) * lz;
    terms.push_back(LogTerm{L, c.sign});
    peak = std::max(peak, L);
    bool decreasing = L < prev || L == kNegInf;
    if (n > start + 8 && decreasing && L < peak - 45.0) break;
    if (c.sign != 0) prev = L;
  }
  if (peak == kNegInf) return 0.0;
  Complex acc = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].sign == 0) continue;
    double mag = std::exp(terms[i].log_abs - peak);
    acc += static_cast<double>(terms[i].sign) * std::polar(mag, static_cast<double>(start + i) * th);
    abs_sum += mag;
  }
  double a = std::abs(acc);
  if (a == 0.0 || abs_sum / a > 1e10) fail(ErrorCode::PrecisionLoss, "cancellation in tail series");
  return std::polar(std::exp(peak + std::log(a)), std::arg(acc));
}

// --- simple kernels ---------------------------------------------------------

class GeometricKernel final : public Kernel {
 public:
  explicit GeometricKernel(double cut) : cut_(cut) {}
  Complex eval(Complex z) const override { return one_over_one_minus(z / cut_); }
  Strategy strategy() const override { return Strategy::closed_form; }
  double cut() const override { return cut_; }

 private:
  double cut_;
};

class PolyGenKernel final : public Kernel {
 public:
  explicit PolyGenKernel(const Polynomial& w) : gen_(w) {}
  Complex eval(Complex z) const override { return gen_(z); }
  Strategy strategy() const override { return Strategy::closed_form; }
  double cut() const override { return 1.0; }

 private:
  specfun::PolyGen gen_;
};

class RationalKernel final : public Kernel {
 public:
  RationalKernel(specfun::PartialFractionForm pf, double lerch_tol) : pf_(std::move(pf)) { opts_.tol = lerch_tol; }
  Complex eval(Complex z) const override { return specfun::rational_gen_eval(pf_, z, opts_); }
  Strategy strategy() const override { return Strategy::closed_form; }
  double cut() const override { return 1.0; }

 private:
  specfun::PartialFractionForm pf_;
  specfun::LerchOptions opts_;
};

class PowerSumForwardKernel final : public Kernel {
 public:
  PowerSumForwardKernel(std::vector<double> bases, double scale) : bases_(std::move(bases)), scale_(scale) {}
  Complex eval(Complex z) const override {
    Complex acc = 0.0;
    for (double a : bases_) acc += one_over_one_minus(a * z);
    return scale_ * acc;
  }
  Strategy strategy() const override { return Strategy::closed_form; }
  double cut() const override { return 1.0 / bases_.front(); }

 private:
  std::vector<double> bases_;
  double scale_;
};

class ExpPolyForwardKernel final : public Kernel {
 public:
  ExpPolyForwardKernel(const ExpPolynomial& e) : scale_(e.scale.real()) {
    for (const auto& t : e.terms) {
      gens_.emplace_back(t.w);
      bases_.push_back(t.base.real());
    }
  }
  Complex eval(Complex z) const override {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < gens_.size(); ++i) acc += gens_[i](bases_[i] * z);
    return scale_ * acc;
  }
  Strategy strategy() const override { return Strategy::closed_form; }
  double cut() const override { return 1.0 / bases_.back(); }

 private:
  std::vector<specfun::PolyGen> gens_;
  std::vector<double> bases_;
  double scale_;
};

class PowerSumInverseKernel final : public Kernel {
 public:
  PowerSumInverseKernel(std::vector<double> bases, double scale, const EvaluatorOptions& opts)
      : bases_(std::move(bases)), scale_(scale), opts_(opts) {}
  Complex eval(Complex z) const override {
    return power_sum_inverse_unscaled(bases_, z, opts_) / scale_;
  }
  Strategy strategy() const override { return Strategy::power_sum_recursion; }
  double cut() const override { return *std::max_element(bases_.begin(), bases_.end()); }

 private:
  std::vector<double> bases_;
  double scale_;
  EvaluatorOptions opts_;
};

class ExpPolyInverseKernel final : public Kernel {
 public:
  ExpPolyInverseKernel(const ExpPolynomial& e, const EvaluatorOptions& opts)
      : inv_(e.terms, opts), scale_(e.scale.real()) {}
  Complex eval(Complex z) const override { return inv_(z) / scale_; }
  Strategy strategy() const override { return Strategy::exp_poly_recursion; }
  double cut() const override { return inv_.cut_radius(); }

 private:
  ExpPolyInverse inv_;
  double scale_;
};

class QFactorialForwardKernel final : public Kernel {
 public:
  QFactorialForwardKernel(const SequenceDescriptor& d, double q, std::size_t terms)
      : q_(q), table_(coefficient_table(d, Target::forward, 1.0 - q, terms)) {}
  Complex eval(Complex z) const override {
    if (q_ == 0.0) return one_over_one_minus(z);
    const double c = 1.0 - q_;
    // F(z) = (1 - q z F(q z) / (1-q)) / (1 - z / (1-q))
    std::vector<Complex> chain{z};
    while (std::abs(chain.back()) > c / 2.0) chain.push_back(q_ * chain.back());
    Complex F = table_.eval(chain.back());
    for (std::size_t i = chain.size() - 1; i-- > 0;) {
      Complex x = chain[i];
      F = (Complex(1.0) - q_ * x * F / c) / (Complex(1.0) - x / c);
    }
    return F;
  }
  Strategy strategy() const override { return Strategy::q_functional; }
  double cut() const override { return 1.0 - q_; }

 private:
  double q_;
  ScaledCoefficients table_;
};

class QFactorialInverseKernel final : public Kernel {
 public:
  explicit QFactorialInverseKernel(double q) : q_(q) {}
  Complex eval(Complex z) const override {
    // 1 / prod_j (1 - (1-q) z q^j)
    Complex x = (1.0 - q_) * z;
    Complex log_prod = 0.0;
    for (int j = 0; j < 100000; ++j) {
      log_prod += std::log(Complex(1.0) - x);
      x *= q_;
      if (std::abs(x) < 1e-18 || q_ == 0.0) break;
    }
    return std::exp(-log_prod);
  }
  Strategy strategy() const override { return Strategy::q_functional; }
  double cut() const override { return 1.0 / (1.0 - q_); }

 private:
  double q_;
};

class PeriodicKernel final : public Kernel {
 public:
  PeriodicKernel(std::vector<double> c) : c_(std::move(c)) {}
  Complex eval(Complex z) const override {
    Complex num = 0.0, zr = 1.0;
    for (double c : c_) {
      num += c * zr;
      zr *= z;
    }
    return num / (Complex(1.0) - zr);
  }
  Strategy strategy() const override { return Strategy::closed_form; }
  double cut() const override { return 1.0; }

 private:
  std::vector<double> c_;
};

// inner(mult * z)
class DilatedKernel final : public Kernel {
 public:
  DilatedKernel(std::shared_ptr<const Kernel> inner, double mult) : inner_(std::move(inner)), mult_(mult) {}
  Complex eval(Complex z) const override { return inner_->eval(mult_ * z); }
  Strategy strategy() const override { return inner_->strategy(); }
  double cut() const override { return inner_->cut() / mult_; }

 private:
  std::shared_ptr<const Kernel> inner_;
  double mult_;
};

class SumForwardKernel final : public Kernel {
 public:
  SumForwardKernel(std::shared_ptr<const Kernel> l, std::shared_ptr<const Kernel> r)
      : l_(std::move(l)), r_(std::move(r)) {}
  Complex eval(Complex z) const override { return l_->eval(z) + r_->eval(z) - 1.0; }
  Strategy strategy() const override { return l_->strategy(); }
  double cut() const override { return std::min(l_->cut(), r_->cut()); }

 private:
  std::shared_ptr<const Kernel> l_, r_;
};

class PerturbedForwardKernel final : public Kernel {
 public:
  PerturbedForwardKernel(std::shared_ptr<const Kernel> base, Tail tail) : base_(std::move(base)), tail_(std::move(tail)) {}
  Complex eval(Complex z) const override {
    Complex t;
    if (tail_.kind == Tail::Kind::values) {
      t = 0.0;
      Complex zn = 1.0;
      for (std::size_t n = 0; n < tail_.values.size(); ++n) {
        t += tail_.values[n].real() * zn;
        zn *= z;
      }
    } else if (tail_.kind == Tail::Kind::factorial && tail_.power == 1.0) {
      Complex bz = tail_.base * z;
      t = tail_.coeff * (std::abs(bz) < 1e-5 ? bz * (1.0 + bz / 2.0 + bz * bz / 6.0) : std::exp(bz) - 1.0);
    } else {
      t = scaled_series([this](std::size_t n) { return LogTerm{tail_.log_abs(n), tail_.sign(n)}; }, z, 1, 200000);
    }
    return base_->eval(z) + t;
  }
  Strategy strategy() const override { return base_->strategy(); }
  double cut() const override { return base_->cut(); }

 private:
  std::shared_ptr<const Kernel> base_;
  Tail tail_;
};

// 1/m = 1/m~ + delta with delta(n) = -r(n) / (m~(n) m(n)).
class PerturbedInverseKernel final : public Kernel {
 public:
  PerturbedInverseKernel(std::shared_ptr<const Kernel> base, SequenceDescriptor m)
      : base_(std::move(base)), m_(std::move(m)) {}
  Complex eval(Complex z) const override {
    const auto& p = m_.as<PerturbedSeq>();
    auto coeff = [&](std::size_t n) {
      int s = p.tail.sign(n);
      if (s == 0) return LogTerm{kNegInf, 0};
      double l = p.tail.log_abs(n) - seq_log_eval(p.base, n) - seq_log_eval(m_, n);
      return LogTerm{l, -s};
    };
    std::size_t budget = kDefaultNMax;
    Complex delta;
    if (p.tail.kind == Tail::Kind::values) {
      delta = 0.0;
      Complex zn = 1.0;
      for (std::size_t n = 0; n < p.tail.values.size(); ++n) {
        auto c = coeff(n);
        if (c.sign != 0) delta += static_cast<double>(c.sign) * std::exp(c.log_abs) * zn;
        zn *= z;
      }
    } else {
      delta = scaled_series(coeff, z, 1, budget);
    }
    return base_->eval(z) + delta;
  }
  Strategy strategy() const override { return base_->strategy(); }
  double cut() const override { return base_->cut(); }

 private:
  std::shared_ptr<const Kernel> base_;
  SequenceDescriptor m_;
};

class DirectKernel final : public Kernel {
 public:
  DirectKernel(ScaledCoefficients table, double cut) : table_(std::move(table)), cut_(cut) {}
  Complex eval(Complex z) const override {
    if (std::abs(z) > cut_ / 2.0) fail(ErrorCode::OutsideBaseDisc, "no continuation strategy beyond the base disc");
    return table_.eval(z);
  }
  Strategy strategy() const override { return Strategy::direct_only; }
  double cut() const override { return cut_; }

 private:
  ScaledCoefficients table_;
  double cut_;
};

std::optional<double> geometric_factor(const SequenceDescriptor& d) {
  if (d.kind() == Kind::geometric) return d.as<Geometric>().a.real();
  if (d.kind() == Kind::inverse) {
    auto f = geometric_factor(d.as<InverseSeq>().inner);
    if (f) return 1.0 / *f;
  }
  if (d.kind() == Kind::product) {
    auto l = geometric_factor(d.as<ProductSeq>().left);
    auto r = geometric_factor(d.as<ProductSeq>().right);
    if (l && r) return *l * *r;
  }
  return std::nullopt;
}

std::shared_ptr<const Kernel> direct_kernel(const SequenceDescriptor& d, Target t, const EvaluatorOptions& opts) {
  auto rate = growth_rate(d);
  if (!rate || !(*rate > 0.0) || !std::isfinite(*rate))
    fail(ErrorCode::EvaluatorUnavailable, "no continuation strategy and no finite radius of convergence");
  double cut = t == Target::forward ? 1.0 / *rate : *rate;
  return std::make_shared<DirectKernel>(coefficient_table(d, t, cut, opts.disc_terms), cut);
}

std::vector<double> reals(const std::vector<Number>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.real());
  return out;
}

}  // namespace

Complex ScaledCoefficients::eval(Complex z) const {
  Complex w = z / rho;
  Complex acc = 0.0;
  for (std::size_t i = d.size(); i-- > 0;) acc = acc * w + d[i];
  return acc;
}

ScaledCoefficients coefficient_table(const SequenceDescriptor& d, Target t, double rho, std::size_t terms) {
  ScaledCoefficients s;
  s.rho = rho;
  s.d.resize(terms);
  EvalOptions opts;
  opts.n_max = std::max(opts.n_max, terms);
  const double lr = std::log(rho);
  for (std::size_t n = 0; n < terms; ++n) {
    double l = seq_log_eval(d, n, opts);
    if (t == Target::inverse) l = -l;
    s.d[n] = std::exp(l + static_cast<double>(n) * lr);
  }
  return s;
}

std::shared_ptr<const Kernel> build_kernel(const SequenceDescriptor& d, Target t, const EvaluatorOptions& opts) {
  const bool fwd = t == Target::forward;
  switch (d.kind()) {
    case Kind::geometric: {
      double a = d.as<Geometric>().a.real();
      return std::make_shared<GeometricKernel>(fwd ? 1.0 / a : a);
    }
    case Kind::polynomial: {
      const auto& w = d.as<PolynomialSeq>().w;
      if (fwd) return std::make_shared<PolyGenKernel>(w);
      if (w.degree() == 0) return std::make_shared<GeometricKernel>(1.0);
      return std::make_shared<RationalKernel>(specfun::partial_fractions(w), opts.lerch_tol);
    }
    case Kind::rational: {
      const auto& r = d.as<RationalSeq>();
      const Polynomial& num = fwd ? r.num : r.den;
      const Polynomial& den = fwd ? r.den : r.num;
      return std::make_shared<RationalKernel>(specfun::partial_fractions(num, den), opts.lerch_tol);
    }
    case Kind::power_sum: {
      const auto& p = d.as<PowerSum>();
      auto bases = reals(p.bases);
      if (fwd) return std::make_shared<PowerSumForwardKernel>(bases, p.scale.real());
      if (bases.size() == 1) return std::make_shared<GeometricKernel>(bases[0]);
      return std::make_shared<PowerSumInverseKernel>(bases, p.scale.real(), opts);
    }
    case Kind::exp_poly: {
      const auto& e = d.as<ExpPolynomial>();
      if (fwd) return std::make_shared<ExpPolyForwardKernel>(e);
      return std::make_shared<ExpPolyInverseKernel>(e, opts);
    }
    case Kind::q_factorial: {
      double q = d.as<QFactorial>().q.real();
      if (fwd) return std::make_shared<QFactorialForwardKernel>(d, q, opts.disc_terms);
      return std::make_shared<QFactorialInverseKernel>(q);
    }
    case Kind::periodic: {
      auto c = reals(d.as<Periodic>().values);
      if (!fwd)
        for (auto& x : c) x = 1.0 / x;
      return std::make_shared<PeriodicKernel>(c);
    }
    case Kind::gamma_ratio:
    case Kind::q_gaussian:
      return direct_kernel(d, t, opts);
    case Kind::product: {
      const auto& p = d.as<ProductSeq>();
      for (int side = 0; side < 2; ++side) {
        const auto& g = side == 0 ? p.left : p.right;
        const auto& other = side == 0 ? p.right : p.left;
        if (auto a = geometric_factor(g)) {
          auto inner = build_kernel(other, t, opts);
          return std::make_shared<DilatedKernel>(inner, fwd ? *a : 1.0 / *a);
        }
      }
      return direct_kernel(d, t, opts);
    }
    case Kind::inverse:
      return build_kernel(d.as<InverseSeq>().inner, flip(t), opts);
    case Kind::sum: {
      const auto& s = d.as<SumSeq>();
      if (fwd) return std::make_shared<SumForwardKernel>(build_kernel(s.left, t, opts), build_kernel(s.right, t, opts));
      return direct_kernel(d, t, opts);
    }
    case Kind::perturbed: {
      const auto& p = d.as<PerturbedSeq>();
      std::shared_ptr<const Kernel> base;
      try {
        base = build_kernel(p.base, t, opts);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EvaluatorUnavailable) throw;
        return direct_kernel(d, t, opts);
      }
      if (base->strategy() == Strategy::direct_only) return direct_kernel(d, t, opts);
      if (fwd) return std::make_shared<PerturbedForwardKernel>(base, p.tail);
      return std::make_shared<PerturbedInverseKernel>(base, d);
    }
  }
  fail(ErrorCode::EvaluatorUnavailable, "unsupported descriptor");
}

}  // namespace detail

// --- power sums ---------------------------------------------------------------

Complex power_sum_inverse_unscaled(std::span<const double> bases_in, Complex z, const EvaluatorOptions& opts) {
  std::vector<double> a(bases_in.begin(), bases_in.end());
  if (a.empty()) fail(ErrorCode::InvalidArgument, "power sum needs bases");
  std::sort(a.begin(), a.end(), std::greater<>());
  const double a1 = a[0];
  check_off_cut(z, a1);
  if (a.size() == 1) return 1.0 / (Complex(1.0) - z / a1);

  const std::size_t k = a.size();
  std::vector<double> log_tau(k - 1);
  for (std::size_t j = 1; j < k; ++j) log_tau[j - 1] = std::log(a[j] / a1);

  // disc coefficients 1/sum a_i^n scaled by a1^n
  std::vector<double> d(opts.disc_terms);
  for (std::size_t n = 0; n < d.size(); ++n) {
    double s = 0.0;
    for (double x : a) s += std::pow(x / a1, static_cast<double>(n));
    d[n] = 1.0 / s;
  }
  auto disc = [&](Complex p) {
    Complex w = p / a1;
    Complex acc = 0.0;
    for (std::size_t i = d.size(); i-- > 0;) acc = acc * w + d[i];
    return acc;
  };

  const double abs_z = std::abs(z);
  if (abs_z <= a1 / 2.0) return disc(z);
  const double depth_bound = std::ceil(std::log(2.0 * abs_z / a1) / -log_tau[0]) + 1.0;

  std::map<std::vector<int>, Complex> memo;
  std::vector<int> idx(k - 1, 0);
  std::function<Complex(int)> f = [&](int depth) -> Complex {
    auto it = memo.find(idx);
    if (it != memo.end()) return it->second;
    if (depth > depth_bound) fail(ErrorCode::DepthExceeded, "power-sum recursion exceeded its depth bound");
    if (memo.size() >= opts.term_budget) fail(ErrorCode::TermBudgetExceeded, "power-sum lattice exceeds budget");
    double lt = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) lt += idx[j] * log_tau[j];
    Complex p = z * std::exp(lt);
    Complex v;
    if (std::abs(p) <= a1 / 2.0) {
      v = disc(p);
    } else {
      v = 1.0 / (Complex(1.0) - p / a1);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        ++idx[j];
        v -= f(depth + 1);
        --idx[j];
      }
    }
    memo.emplace(idx, v);
    return v;
  };
  return f(0);
}

Complex inverse_eval_power_sum(const SequenceDescriptor& d, Complex z, const EvaluatorOptions& opts) {
  if (d.kind() != Kind::power_sum) fail(ErrorCode::InvalidArgument, "inverse_eval_power_sum needs a power sum");
  const auto& p = d.as<PowerSum>();
  std::vector<double> bases;
  for (const auto& a : p.bases) bases.push_back(a.real());
  return power_sum_inverse_unscaled(bases, z, opts) / p.scale.real();
}

// --- exp-polynomials ------------------------------------------------------------

struct ExpPolyInverse::Impl {
  std::vector<ExpPolyTerm> terms;
  EvaluatorOptions opts;
  std::size_t l = 0;
  double a_l = 1.0;
  std::vector<double> rho;  // a_i / a_l for i < l
  specfun::Factorization fl;
  std::vector<double> d;  // a_l^n / m(n)
  mutable std::mutex mu;
  mutable std::map<std::vector<int>, specfun::PartialFractionForm> pf_cache;

  Complex disc(const Polynomial* W, Complex v, const std::vector<int>* idx, int pow_l) const {
    Complex acc = 0.0;
    for (std::size_t i = d.size(); i-- > 0;) {
      const Complex x(static_cast<double>(i), 0.0);
      Complex weight = W ? (*W)(x) : Complex(1.0);
      if (idx) {
        for (std::size_t j = 0; j < idx->size(); ++j)
          if ((*idx)[j]) weight *= std::pow(terms[j].w(x), (*idx)[j]);
        if (pow_l) weight /= std::pow(terms[l - 1].w(x), pow_l);
      }
      acc = acc * v + weight * d[i];
    }
    return acc;
  }

  specfun::PartialFractionForm pf_for(const Polynomial* W, const std::vector<int>& idx, int K) const {
    if (!W) {
      std::lock_guard<std::mutex> lock(mu);
      auto it = pf_cache.find(idx);
      if (it != pf_cache.end()) return it->second;
    }
    Polynomial num = W ? *W : Polynomial(std::vector<Rational>{1});
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (idx[j]) num = num * terms[j].w.pow(static_cast<unsigned>(idx[j]));
    auto pf = specfun::partial_fractions(num, fl.raised(K + 1),
                                           specfun::kReconstructionTol, true);
    if (!W) {
      std::lock_guard<std::mutex> lock(mu);
      pf_cache.emplace(idx, pf);
    }
    return pf;
  }

  int depth(double abs_z) const {
    if (abs_z <= a_l / 2.0 || l == 1) return 0;
    double ratio = a_l / terms[l - 2].base.real();
    return std::max(1, static_cast<int>(std::ceil(std::log(2.0 * abs_z / a_l) / std::log(ratio))));
  }

  std::size_t count(int N) const {
    // sum_{K<=N} C(K + l - 2, l - 2)
    double total = 0.0;
    for (int K = 0; K <= N; ++K) {
      double c = 1.0;
      for (std::size_t i = 1; i + 1 < l; ++i) c = c * static_cast<double>(K + static_cast<int>(i)) / static_cast<double>(i);
      total += c;
    }
    return total > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(total);
  }

  Complex weighted(const Polynomial* W, Complex Z) const {
    check_off_cut(Z, a_l);
    const double abs_z = std::abs(Z);
    if (abs_z <= a_l / 2.0) return disc(W, Z / a_l, nullptr, 0);
    specfun::LerchOptions lo;
    lo.tol = opts.lerch_tol;
    if (l == 1) {
      Polynomial num = W ? *W : Polynomial(std::vector<Rational>{1});
      auto pf = specfun::partial_fractions(num, fl, specfun::kReconstructionTol, true);
      return specfun::rational_gen_eval(pf, Z / a_l, lo);
    }
    const int N = depth(abs_z);
    if (count(N) > opts.term_budget) fail(ErrorCode::TermBudgetExceeded, "exp-polynomial expansion exceeds budget");
    const Complex z = Z / a_l;
    Complex acc = 0.0;
    std::vector<int> idx(l - 1, 0);
    // enumerate compositions of K into l-1 parts
    std::function<void(std::size_t, int, int)> walk = [&](std::size_t pos, int left, int K) {
      if (pos + 1 == idx.size()) {
        idx[pos] = left;
        double lf = std::lgamma(K + 1.0);
        double lrho = 0.0;
        for (std::size_t j = 0; j < idx.size(); ++j) {
          lf -= std::lgamma(idx[j] + 1.0);
          lrho += idx[j] * std::log(rho[j]);
        }
        double coef = (K % 2 == 0 ? 1.0 : -1.0) * std::round(std::exp(lf));
        Complex u = z * std::exp(lrho);
        if (K < N) {
          acc += coef * specfun::rational_gen_eval(pf_for(W, idx, K), u, lo);
        } else {
          acc += coef * disc(W, u, &idx, N);
        }
        return;
      }
      for (int i = 0; i <= left; ++i) {
        idx[pos] = i;
        walk(pos + 1, left - i, K);
      }
    };
    for (int K = 0; K <= N; ++K) walk(0, K, K);
    return acc;
  }
};

ExpPolyInverse::ExpPolyInverse(std::vector<ExpPolyTerm> terms, const EvaluatorOptions& opts)
    : impl_(std::make_unique<Impl>()) {
  auto& I = *impl_;
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "exp-polynomial needs terms");
  I.terms = std::move(terms);
  I.opts = opts;
  I.l = I.terms.size();
  I.a_l = I.terms.back().base.real();
  for (std::size_t i = 0; i + 1 < I.l; ++i) I.rho.push_back(I.terms[i].base.real() / I.a_l);
  I.fl = specfun::factor_polynomial(I.terms.back().w);
  for (const auto& r : I.fl.roots) {
    double k = std::round(r.value.real());
    if (k >= 0.0 && std::abs(r.value - Complex(k, 0.0)) < specfun::kRootClusterTol)
      fail(ErrorCode::RootOnNonnegativeIntegers, "leading weight vanishes at a nonnegative integer");
  }
  I.d.resize(opts.disc_terms);
  for (std::size_t n = 0; n < I.d.size(); ++n) {
    const double x = static_cast<double>(n);
    Complex s = 0.0;
    for (const auto& t : I.terms) s += t.w(x) * std::pow(t.base.real() / I.a_l, x);
    I.d[n] = 1.0 / s.real();
  }
}

ExpPolyInverse::~ExpPolyInverse() = default;
ExpPolyInverse::ExpPolyInverse(ExpPolyInverse&&) noexcept = default;
ExpPolyInverse& ExpPolyInverse::operator=(ExpPolyInverse&&) noexcept = default;

Complex ExpPolyInverse::operator()(Complex Z) const { return impl_->weighted(nullptr, Z); }
Complex ExpPolyInverse::weighted(const Polynomial& W, Complex Z) const { return impl_->weighted(&W, Z); }
double ExpPolyInverse::cut_radius() const { return impl_->a_l; }
std::size_t ExpPolyInverse::term_count(double abs_z) const { return impl_->count(impl_->depth(abs_z)); }

Complex inverse_eval_exp_poly(const SequenceDescriptor& d, Complex z, const EvaluatorOptions& opts) {
  if (d.kind() != Kind::exp_poly) fail(ErrorCode::InvalidArgument, "inverse_eval_exp_poly needs an exp-polynomial");
  const auto& e = d.as<ExpPolynomial>();
  return ExpPolyInverse(e.terms, opts)(z) / e.scale.real();
}

Complex forward_eval(const SequenceDescriptor& d, Complex z) {
  switch (d.kind()) {
    case Kind::geometric:
    case Kind::polynomial:
    case Kind::rational:
    case Kind::power_sum:
    case Kind::exp_poly: {
      auto k = detail::build_kernel(d, Target::forward, {});
      check_off_cut(z, k->cut());
      return k->eval(z);
    }
    default:
      fail(ErrorCode::InvalidArgument, "forward_eval covers polynomial, rational and exp-polynomial families");
  }
}

}  // namespace summa::cont
