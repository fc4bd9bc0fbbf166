#pragma once

#include <vector>

#include "summa/number.hpp"
#include "summa/polynomial.hpp"

namespace summa::specfun {

inline constexpr double kRootClusterTol = 1e-8;
inline constexpr double kReconstructionTol = 1e-10;

struct PoleTerm {
  Complex alpha;  // pole at n = -alpha
  int nu = 1;
  Complex coeff;
};

// polynomial_part(n) + sum coeff / (n + alpha)^nu
struct PartialFractionForm {
  Polynomial polynomial_part;
  std::vector<PoleTerm> pole_terms;

  Complex operator()(Complex n) const;
};

struct Root {
  Complex value;
  int multiplicity = 1;
};

// leading * prod (x - root)^multiplicity
struct Factorization {
  Complex leading;
  std::vector<Root> roots;

  Factorization raised(int power) const;
  Complex operator()(Complex x) const;
  std::size_t degree() const;
};

// Exact inputs go through a square-free decomposition first; inexact ones
// through companion eigenvalues with clustering at cluster_tol.
Factorization factor_polynomial(const Polynomial& w, double cluster_tol = kRootClusterTol);

// Decomposition of 1/w.
PartialFractionForm partial_fractions(const Polynomial& w);
// Decomposition of num/den.
PartialFractionForm partial_fractions(const Polynomial& num, const Polynomial& den);
// With rounding_floor the probe check also admits the rounding error of the
// pole sum itself, 64 eps sum |C/(n+alpha)^nu|; fast-decaying num/den lose
// all relative accuracy at larger n that way while sum C Phi stays accurate.
PartialFractionForm partial_fractions(const Polynomial& num, const Factorization& den,
                                      double recon_tol = kReconstructionTol, bool rounding_floor = false);

}  // namespace summa::specfun
