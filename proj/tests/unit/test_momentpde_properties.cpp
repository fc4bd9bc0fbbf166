#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "summa/error.hpp"
#include "summa/momentpde/momentpde.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/descriptor_json.hpp"
#include "summa/seqcore/series.hpp"

using namespace summa;
using namespace summa::pde;

namespace {

BigInt fact(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

std::vector<seq::SequenceDescriptor> exact_moments() {
  return {
      seq::one(),
      seq::geometric(Number(2)),
      seq::power_sum({Number(2), Number(1)}),
      seq::power_sum({Number(3), Number(2), Number(1)}),
      seq::q_factorial(Number(Rational(1, 2))),
      seq::polynomial(poly({Rational(1), Rational(1)})),
      seq::exp_polynomial({{poly({Rational(1), Rational(1)}), Number(1)}, {poly({Rational(1)}), Number(3)}}),
      seq::gamma_ratio({2.0}, {1.0, 1.0}),
      seq::inverse(seq::power_sum({Number(2), Number(1)})),
  };
}

class Rng {
 public:
  explicit Rng(unsigned seed) : g_(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  Rational rational() {
    int den = integer(1, 5);
    return Rational(integer(-6, 6), den);
  }

 private:
  std::mt19937 g_;
};

CauchyProblem random_problem(Rng& rng, const seq::SequenceDescriptor& m) {
  CauchyProblem cp;
  const unsigned p = static_cast<unsigned>(rng.integer(1, 3));
  const unsigned dz = static_cast<unsigned>(rng.integer(0, 2));
  Rational lead = 0;
  while (lead == 0) lead = rng.rational();
  cp.P.push_back(PTerm{p, 0, Number(lead)});
  for (unsigned i = 0; i < p; ++i)
    for (unsigned k = 0; k <= dz; ++k)
      if (rng.integer(0, 2) > 0) cp.P.push_back(PTerm{i, k, Number(rng.rational())});
  cp.P.push_back(PTerm{0, dz, Number(1)});
  cp.m = m;
  cp.N = 6;
  cp.M = cp.N * dz + 4;
  for (unsigned j = 0; j < p; ++j) {
    std::vector<Number> f;
    for (std::size_t k = 0; k <= cp.M; ++k) f.emplace_back(rng.rational());
    cp.phi.push_back(std::move(f));
  }
  return cp;
}

template <typename T>
bool all_zero(const BasicBivariate<T>& u) {
  for (std::size_t n = 0; n < u.levels(); ++n)
    for (const auto& c : u[n].coeffs())
      if (c != T(0)) return false;
  return true;
}

seq::ExactSeries random_series(Rng& rng, std::size_t len) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < len; ++i) c.push_back(rng.rational());
  return seq::ExactSeries(std::move(c));
}

}  // namespace

TEST(MomentPdeProperty, UnitMomentReproducesHeatIterates) {
  Rng rng(301);
  for (std::size_t N = 1; N <= 8; ++N) {
    for (std::size_t M : {2 * N, 2 * N + 3, std::size_t{24}}) {
      CauchyProblem cp;
      cp.P = heat_operator();
      std::vector<Number> phi;
      for (std::size_t j = 0; j <= M; ++j) phi.emplace_back(rng.rational());
      cp.phi = {phi};
      cp.N = N;
      cp.M = M;
      ExactBivariate u = solve_formal_exact(cp);
      ASSERT_EQ(u.levels(), N + 1);
      for (std::size_t n = 0; n <= N; ++n)
        for (std::size_t j = 0; j <= M; ++j) {
          Rational expect = 0;
          if (j + 2 * n <= M) expect = phi[j + 2 * n].exact() * Rational(fact(j + 2 * n), fact(j) * fact(n));
          ASSERT_EQ(u.at(n, j), expect) << "N=" << N << " M=" << M << " n=" << n << " j=" << j;
        }
    }
  }
}

TEST(MomentPdeProperty, MomentSolutionIsBorelOfClassical) {
  Rng rng(302);
  const auto moments = exact_moments();
  for (int trial = 0; trial < 10; ++trial) {
    const auto& m = moments[static_cast<std::size_t>(trial) % moments.size()];
    CauchyProblem cp = random_problem(rng, m);
    SCOPED_TRACE(canonical_dump(problem_to_json(cp)));
    ExactBivariate u = solve_formal_exact(cp);
    ExactBivariate v = solve_formal_exact(classical(cp));
    auto r = check_prop9(u, v, m);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.max_residual, 0.0);
    EXPECT_TRUE(all_zero(apply_operator(cp.P, m, u)));

    auto f = check_prop9(solve_formal(cp), solve_formal(classical(cp)), m, 1e-10);
    EXPECT_TRUE(f.holds) << f.max_residual;
  }
}

TEST(MomentPdeProperty, BorelByInverseSolvesClassicalProblem) {
  Rng rng(303);
  const auto moments = exact_moments();
  for (int trial = 0; trial < 18; ++trial) {
    const auto& m = moments[static_cast<std::size_t>(trial) % moments.size()];
    CauchyProblem cp = random_problem(rng, m);
    SCOPED_TRACE(canonical_dump(problem_to_json(cp)));
    ExactBivariate u = solve_formal_exact(cp);
    ExactBivariate back = borel_t(seq::inverse(m), u);
    EXPECT_TRUE(all_zero(apply_operator(cp.P, seq::one(), back)));
    EXPECT_EQ(back, solve_formal_exact(classical(cp)));
    EXPECT_EQ(borel_t(m, back), u);
  }
}

TEST(MomentPdeProperty, CentralBinomialOperator) {
  Rng rng(304);
  const auto m = seq::gamma_ratio({2.0}, {1.0, 1.0});
  ASSERT_EQ(seq::seq_eval_exact(m, 3), Rational(20));
  for (int trial = 0; trial < 20; ++trial) {
    auto u = random_series(rng, static_cast<std::size_t>(rng.integer(2, 16)));
    EXPECT_EQ(central_binomial_operator(u), seq::moment_derivative(m, true, u));
    auto uf = seq::to_float(u);
    auto a = central_binomial_operator(uf), b = seq::moment_derivative(m, true, uf);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(std::abs(a[n] - b[n]), 0.0, 1e-12 * (1.0 + std::abs(a[n])));
  }
}

TEST(MomentPdeProperty, QDerivativeOperator) {
  Rng rng(305);
  for (Rational q : {Rational(0), Rational(1, 2), Rational(1, 3), Rational(9, 10)}) {
    const auto m = seq::q_factorial(Number(q));
    for (int trial = 0; trial < 10; ++trial) {
      auto u = random_series(rng, static_cast<std::size_t>(rng.integer(2, 16)));
      EXPECT_EQ(q_derivative_operator(q, u), seq::moment_derivative(m, true, u)) << q;
      auto a = q_derivative_operator(to_double(q), seq::to_float(u));
      auto b = seq::moment_derivative(m, true, seq::to_float(u));
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t n = 0; n < a.size(); ++n) EXPECT_LE(std::abs(a[n] - b[n]), 1e-12 * (1.0 + std::abs(a[n])));
    }
  }
}

TEST(MomentPdeProperty, ExpPolyOperator) {
  // a d_t (1 + t^-1 d_t^-1)^p matches m(n) = (n+2)^p a^n, normalized to m(0) = 1
  Rng rng(306);
  for (unsigned p = 0; p <= 3; ++p) {
    for (Rational a : {Rational(1), Rational(2), Rational(1, 3)}) {
      Polynomial w = poly({Rational(1)});
      for (unsigned i = 0; i < p; ++i) w = w * poly({Rational(2), Rational(1)});
      const auto m = seq::exp_polynomial({{w, Number(a)}});
      for (int trial = 0; trial < 5; ++trial) {
        auto u = random_series(rng, static_cast<std::size_t>(rng.integer(2, 14)));
        EXPECT_EQ(exp_poly_operator(a, p, u), seq::moment_derivative(m, true, u)) << "p=" << p << " a=" << a;
        auto x = exp_poly_operator(to_double(a), p, seq::to_float(u));
        auto y = seq::moment_derivative(m, true, seq::to_float(u));
        ASSERT_EQ(x.size(), y.size());
        for (std::size_t n = 0; n < x.size(); ++n) EXPECT_LE(std::abs(x[n] - y[n]), 1e-12 * (1.0 + std::abs(x[n])));
      }
    }
  }
}

TEST(MomentPdeProperty, IndependentProblemsSolveConcurrently) {
  Rng rng(307);
  const auto moments = exact_moments();
  std::vector<CauchyProblem> problems;
  for (int i = 0; i < 8; ++i) problems.push_back(random_problem(rng, moments[static_cast<std::size_t>(i)]));
  std::vector<ExactBivariate> serial, parallel(problems.size());
  for (const auto& cp : problems) serial.push_back(solve_formal_exact(cp));
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < problems.size(); ++i)
    threads.emplace_back([&, i] { parallel[i] = solve_formal_exact(problems[i]); });
  for (auto& t : threads) t.join();
  for (std::size_t i = 0; i < problems.size(); ++i) EXPECT_EQ(serial[i], parallel[i]) << i;
}
