#pragma once

#include <memory>
#include <span>
#include <vector>

#include "summa/continuation/evaluator.hpp"

namespace summa::cont::detail {

class Kernel {
 public:
  virtual ~Kernel() = default;
  virtual Complex eval(Complex z) const = 0;
  virtual Strategy strategy() const = 0;
  virtual double cut() const = 0;
};

std::shared_ptr<const Kernel> build_kernel(const seq::SequenceDescriptor& d, Target t, const EvaluatorOptions& opts);

// Coefficients c_n stored as d_n = c_n rho^n, evaluated by Horner in z / rho.
struct ScaledCoefficients {
  double rho = 1.0;
  std::vector<double> d;

  Complex eval(Complex z) const;
};

// Table of c_n = m(n)^(+1 or -1) for the disc partial sums.
ScaledCoefficients coefficient_table(const seq::SequenceDescriptor& d, Target t, double rho, std::size_t terms);

}  // namespace summa::cont::detail
