#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "summa/number.hpp"
#include "summa/polynomial.hpp"
#include "summa/seqcore/descriptor.hpp"

namespace summa::cont {

enum class Target { forward, inverse };
enum class Strategy { closed_form, power_sum_recursion, exp_poly_recursion, q_functional, direct_only };

std::string_view target_name(Target t);
std::string_view strategy_name(Strategy s);
Target parse_target(std::string_view s);
Target flip(Target t);

struct EvaluatorOptions {
  std::size_t term_budget = 1'000'000;
  std::size_t disc_terms = 1024;
  double lerch_tol = 1e-10;
};

namespace detail {
class Kernel;
}

// Analytic continuation of sum m(n) z^n (forward) or sum z^n / m(n)
// (inverse) off the cut [cut_radius, inf). Copies share one memo cache.
class ContinuationEvaluator {
 public:
  static ContinuationEvaluator create(const seq::SequenceDescriptor& d, Target target,
                                      const EvaluatorOptions& opts = {});
  // Evaluator for an arbitrary closed form; coeff(n) feeds partial_sum.
  static ContinuationEvaluator custom(std::string label, std::function<Complex(Complex)> f, double cut_radius,
                                      std::function<Complex(std::size_t)> coeff);

  Complex operator()(Complex z) const;
  // sum_{n < terms} c_n z^n of the underlying series.
  Complex partial_sum(Complex z, std::size_t terms = 1024) const;

  Target target() const;
  Strategy strategy() const;
  double cut_radius() const;
  double base_disc_radius() const;
  const std::string& label() const;
  std::size_t memo_size() const;

 private:
  struct Impl;
  explicit ContinuationEvaluator(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// sum m(n) z^n for polynomial, rational, power-sum, exp-polynomial and
// geometric descriptors.
Complex forward_eval(const seq::SequenceDescriptor& d, Complex z);

// sum z^n / m(n) for a power-sum descriptor (includes its 1/k scale).
Complex inverse_eval_power_sum(const seq::SequenceDescriptor& d, Complex z, const EvaluatorOptions& opts = {});
// sum z^n / (a_1^n + ... + a_k^n), bases in any order.
Complex power_sum_inverse_unscaled(std::span<const double> bases, Complex z, const EvaluatorOptions& opts = {});

// sum z^n / m(n) for an exp-polynomial descriptor (includes its scale).
Complex inverse_eval_exp_poly(const seq::SequenceDescriptor& d, Complex z, const EvaluatorOptions& opts = {});

// Continuation of sum W(n) Z^n / m(n) with m(n) = sum w_i(n) a_i^n (no scale).
class ExpPolyInverse {
 public:
  explicit ExpPolyInverse(std::vector<seq::ExpPolyTerm> terms, const EvaluatorOptions& opts = {});
  ~ExpPolyInverse();
  ExpPolyInverse(ExpPolyInverse&&) noexcept;
  ExpPolyInverse& operator=(ExpPolyInverse&&) noexcept;

  Complex operator()(Complex Z) const;
  Complex weighted(const Polynomial& W, Complex Z) const;
  double cut_radius() const;
  // Number of terms the expansion would use at |Z|.
  std::size_t term_count(double abs_z) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace summa::cont
