#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "summa/number.hpp"
#include "summa/polynomial.hpp"

namespace summa::seq {

inline constexpr std::size_t kDefaultNMax = 4096;
inline constexpr std::size_t kPositivityCheck = 512;

enum class Kind {
  geometric,
  polynomial,
  rational,
  power_sum,
  exp_poly,
  q_factorial,
  gamma_ratio,
  periodic,
  q_gaussian,
  product,
  inverse,
  sum,
  perturbed,
};

std::string_view kind_name(Kind k);

// Additive correction r(n) of a perturbed sequence. r(0) is always 0.
struct Tail {
  enum class Kind { values, factorial, q_gaussian };
  Kind kind = Kind::values;
  // values: r(n) = values[n] for n < size, 0 beyond.
  std::vector<Number> values;
  // factorial:  r(n) = coeff * base^n / (n!)^power,           n >= 1
  // q_gaussian: r(n) = coeff * n^power * q^(-n(n-1)/2),      n >= 1
  double coeff = 1.0;
  double base = 1.0;
  double power = 1.0;
  double q = 2.0;

  // ln|r(n)|, -inf when r(n) = 0.
  double log_abs(std::size_t n) const;
  int sign(std::size_t n) const;
  double value(std::size_t n) const;
  bool is_zero(std::size_t n) const { return sign(n) == 0; }
};

class SequenceDescriptor;

struct ExpPolyTerm {
  Polynomial w;
  Number base;
};

struct Geometric { Number a; };
struct PolynomialSeq { Polynomial w; };
struct RationalSeq { Polynomial num, den; };
// m(n) = scale * sum a_i^n, bases strictly decreasing, scale = 1/k.
struct PowerSum { std::vector<Number> bases; Number scale; };
// m(n) = scale * sum w_i(n) a_i^n, bases strictly increasing, scale = 1/sum w_i(0).
struct ExpPolynomial { std::vector<ExpPolyTerm> terms; Number scale; };
struct QFactorial { Number q; };
// m(n) = prod Gamma(1 + a_i n) / prod Gamma(1 + b_j n)
struct GammaRatio { std::vector<double> a, b; bool balanced = true; };
struct Periodic { std::vector<Number> values; };
// m(n) = q^(s n(n-1)/2)
struct QGaussian { Number q; double s; };

struct ProductSeq;
struct InverseSeq;
struct SumSeq;
struct PerturbedSeq;

// Immutable, shareable handle to a descriptor tree.
class SequenceDescriptor {
 public:
  struct Node;

  SequenceDescriptor() = delete;
  Kind kind() const;
  const Node& node() const { return *node_; }

  template <typename T>
  const T& as() const;

  bool exact_capable() const;

 private:
  explicit SequenceDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
  template <typename T>
  friend SequenceDescriptor wrap(T payload);
};

struct ProductSeq { SequenceDescriptor left, right; };
struct InverseSeq { SequenceDescriptor inner; };
struct SumSeq { SequenceDescriptor left, right; };
struct PerturbedSeq { SequenceDescriptor base; Tail tail; };

using Payload = std::variant<Geometric, PolynomialSeq, RationalSeq, PowerSum, ExpPolynomial, QFactorial,
                             GammaRatio, Periodic, QGaussian, ProductSeq, InverseSeq, SumSeq, PerturbedSeq>;

struct SequenceDescriptor::Node {
  Payload payload;
};

template <typename T>
const T& SequenceDescriptor::as() const {
  return std::get<T>(node_->payload);
}

// Constructors validate the invariants and throw InvalidDescriptor.
SequenceDescriptor one();
SequenceDescriptor geometric(const Number& a);
SequenceDescriptor polynomial(const Polynomial& w);
SequenceDescriptor rational(const Polynomial& num, const Polynomial& den);
SequenceDescriptor power_sum(std::vector<Number> bases);
SequenceDescriptor exp_polynomial(std::vector<ExpPolyTerm> terms);
SequenceDescriptor q_factorial(const Number& q);
// With balanced = false the sum condition is skipped (used for n!-type test sequences).
SequenceDescriptor gamma_ratio(std::vector<double> a, std::vector<double> b, bool balanced = true);
SequenceDescriptor periodic(std::vector<Number> values);
SequenceDescriptor q_gaussian(const Number& q, double s);
SequenceDescriptor product(const SequenceDescriptor& left, const SequenceDescriptor& right);
SequenceDescriptor inverse(const SequenceDescriptor& inner);
SequenceDescriptor sum(const SequenceDescriptor& left, const SequenceDescriptor& right);
SequenceDescriptor perturbed(const SequenceDescriptor& base, Tail tail);

struct EvalOptions {
  std::size_t n_max = kDefaultNMax;
};

double seq_eval(const SequenceDescriptor& d, std::size_t n, const EvalOptions& opts = {});
double seq_log_eval(const SequenceDescriptor& d, std::size_t n, const EvalOptions& opts = {});
// Throws NotExact when the descriptor has no exact evaluation.
Rational seq_eval_exact(const SequenceDescriptor& d, std::size_t n, const EvalOptions& opts = {});

// Asymptotic growth rate lim m(n)^(1/n), when it is known in closed form.
// The forward series then has radius 1/rate and the inverse series radius rate.
std::optional<double> growth_rate(const SequenceDescriptor& d);

}  // namespace summa::seq
