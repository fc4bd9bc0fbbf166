#pragma once

#include <cstddef>
#include <vector>

#include "summa/json_util.hpp"
#include "summa/number.hpp"
#include "summa/seqcore/descriptor.hpp"

namespace summa::seq {

// Coefficients a_0..a_N of a truncated power series.
template <typename T>
class BasicSeries {
 public:
  BasicSeries();
  explicit BasicSeries(std::vector<T> coeffs);

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  friend bool operator==(const BasicSeries& a, const BasicSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
};

using TruncatedSeries = BasicSeries<Complex>;
using ExactSeries = BasicSeries<Rational>;

TruncatedSeries to_float(const ExactSeries& s);

// a_n -> a_n / m(n)
TruncatedSeries borel(const SequenceDescriptor& m, const TruncatedSeries& u);
ExactSeries borel(const SequenceDescriptor& m, const ExactSeries& u);

// a_n -> a_n / q^(s n(n-1)/2)
TruncatedSeries q_borel(double s, double q, const TruncatedSeries& u);

// coefficient n -> (mu(n+1)/mu(n)) u_{n+1}, mu = m or m(n) n!
TruncatedSeries moment_derivative(const SequenceDescriptor& m, bool factorial_weight, const TruncatedSeries& u);
ExactSeries moment_derivative(const SequenceDescriptor& m, bool factorial_weight, const ExactSeries& u);

// mu(b)/mu(a) for mu = m or m(n) n!, computed stably.
double moment_ratio(const SequenceDescriptor& m, bool factorial_weight, std::size_t b, std::size_t a);
Rational moment_ratio_exact(const SequenceDescriptor& m, bool factorial_weight, std::size_t b, std::size_t a);

Json series_to_json(const TruncatedSeries& s);
Json series_to_json(const ExactSeries& s);
TruncatedSeries series_from_json(const Json& j);
// Every entry must be exact (integers, {"num","den"} or "p/q").
ExactSeries exact_series_from_json(const Json& j);

}  // namespace summa::seq
