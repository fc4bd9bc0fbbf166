#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "summa/continuation/evaluator.hpp"
#include "summa/continuation/growth.hpp"
#include "summa/json_util.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/gevrey.hpp"
#include "summa/seqcore/series.hpp"

namespace summa::pde {

// u(t, z) = sum_n u_n(z) t^n with every u_n a Taylor polynomial of the same z-degree.
template <typename T>
class BasicBivariate {
 public:
  BasicBivariate() = default;
  explicit BasicBivariate(std::vector<seq::BasicSeries<T>> levels);

  // number of t-levels is t_degree() + 1; an empty series has none
  std::size_t levels() const { return levels_.size(); }
  std::size_t t_degree() const { return levels_.empty() ? 0 : levels_.size() - 1; }
  std::size_t z_degree() const { return levels_.empty() ? 0 : levels_.front().degree(); }
  bool empty() const { return levels_.empty(); }

  const seq::BasicSeries<T>& operator[](std::size_t n) const { return levels_[n]; }
  const T& at(std::size_t n, std::size_t j) const { return levels_[n][j]; }
  const std::vector<seq::BasicSeries<T>>& data() const { return levels_; }

  friend bool operator==(const BasicBivariate& a, const BasicBivariate& b) { return a.levels_ == b.levels_; }

 private:
  std::vector<seq::BasicSeries<T>> levels_;
};

using BivariateSeries = BasicBivariate<Complex>;
using ExactBivariate = BasicBivariate<Rational>;

BivariateSeries to_float(const ExactBivariate& u);
Json bivariate_to_json(const BivariateSeries& u);
Json bivariate_to_json(const ExactBivariate& u);

// coeff * lambda^lambda_pow * zeta^zeta_pow
struct PTerm {
  unsigned lambda_pow = 0;
  unsigned zeta_pow = 0;
  Number coeff;
};

// P(d_{m Gamma_1, t}, d_z) u = 0 with d^j_{m Gamma_1, t} u(0, z) = phi_j(z), j < p.
struct CauchyProblem {
  std::vector<PTerm> P;
  seq::SequenceDescriptor m = seq::one();
  std::vector<std::vector<Number>> phi;
  std::size_t N = 8;   // t-degree
  std::size_t M = 24;  // z-degree
  Complex z0{0.0, 0.0};

  std::size_t order() const;        // lambda-degree p
  std::size_t zeta_degree() const;  // max zeta power
  bool exact_capable() const;
};

// Merges repeated monomials and checks the problem:
// InvalidArgument, LeadingCoefficientNotConstant, TruncationStarved.
void validate(const CauchyProblem& cp);

CauchyProblem problem_from_json(const Json& j);
Json problem_to_json(const CauchyProblem& cp);

// The heat operator lambda - zeta^2.
std::vector<PTerm> heat_operator();
bool is_heat_operator(const std::vector<PTerm>& P);

BivariateSeries solve_formal(const CauchyProblem& cp);
// Throws NotExact unless P, phi and m all evaluate exactly.
ExactBivariate solve_formal_exact(const CauchyProblem& cp);

// Same data with d_t in place of the moment derivative.
CauchyProblem classical(const CauchyProblem& cp);

// u_n(z) -> u_n(z) / m(n)
BivariateSeries borel_t(const seq::SequenceDescriptor& m, const BivariateSeries& u);
ExactBivariate borel_t(const seq::SequenceDescriptor& m, const ExactBivariate& u);

// P(d_{m Gamma_1, t}, d_z) u on the levels 0..N-p.
BivariateSeries apply_operator(const std::vector<PTerm>& P, const seq::SequenceDescriptor& m, const BivariateSeries& u);
ExactBivariate apply_operator(const std::vector<PTerm>& P, const seq::SequenceDescriptor& m, const ExactBivariate& u);

struct Prop9Check {
  bool holds = true;
  double max_residual = 0.0;
};

// u_hat[n] == v_hat[n] / m(n) coefficientwise. The float residual is
// |u - v/m| / max(|v/m|, 1); the exact check demands equality.
Prop9Check check_prop9(const BivariateSeries& u_hat, const BivariateSeries& v_hat, const seq::SequenceDescriptor& m,
                       double tol = 1e-12);
Prop9Check check_prop9(const ExactBivariate& u_hat, const ExactBivariate& v_hat, const seq::SequenceDescriptor& m);

// Operators that act like d_{m Gamma_1, t} for specific m, built from their
// literal definitions (derivative, shift, q-difference, antiderivative).
// 4 d_t - 2 d_{1,t}
seq::ExactSeries central_binomial_operator(const seq::ExactSeries& u);
seq::TruncatedSeries central_binomial_operator(const seq::TruncatedSeries& u);
// D_{q,t} (t d_t) with D_{q,t} u(t) = (u(qt) - u(t)) / (qt - t)
seq::ExactSeries q_derivative_operator(const Rational& q, const seq::ExactSeries& u);
seq::TruncatedSeries q_derivative_operator(double q, const seq::TruncatedSeries& u);
// a d_t (1 + t^-1 d_t^-1)^p
seq::ExactSeries exp_poly_operator(const Rational& a, unsigned p, const seq::ExactSeries& u);
seq::TruncatedSeries exp_poly_operator(double a, unsigned p, const seq::TruncatedSeries& u);

struct HeatProbeOptions {
  std::size_t terms = 120;
  // false: phi is a truncated Taylor series, so only deg(phi)/2 levels are
  // trustworthy; true: phi is an exact polynomial and is padded with zeros
  bool polynomial_data = false;
  double r_min = 0.1;
  double r_max = 1e3;
  std::size_t points = 61;
  cont::ScanOptions scan;
};

struct HeatProbeReport {
  // sum u_n(z0) / n! t^n for the moment problem and for d_t; w = w_classical / m(n)
  seq::TruncatedSeries w;
  seq::TruncatedSeries w_classical;
  std::string closed_form;  // registry entry, empty when unrecognized
  std::optional<cont::ContinuationEvaluator> evaluator;
  std::optional<cont::GrowthReport> scan;
  std::optional<seq::GevreyEstimate> disc;
  std::string note;
};

// Heat equation with initial data phi. Recognized
// closed forms of w_classical are continued and scanned along directions;
// anything else gets a disc-only Gevrey estimate.
HeatProbeReport heat_summability_probe(const seq::SequenceDescriptor& m, const std::vector<Number>& phi, Complex z0,
                                       const std::vector<double>& directions, const HeatProbeOptions& opts = {});

}  // namespace summa::pde
