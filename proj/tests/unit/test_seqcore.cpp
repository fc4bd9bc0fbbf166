#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "summa/error.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/descriptor_json.hpp"
#include "summa/seqcore/gevrey.hpp"
#include "summa/seqcore/series.hpp"

using namespace summa;
using namespace summa::seq;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no summa::Error thrown";
  return ErrorCode::InvalidArgument;
}

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

SequenceDescriptor factorial_seq() { return gamma_ratio({1.0}, {}, false); }

Tail factorial_tail(double coeff = 1.0) {
  Tail t;
  t.kind = Tail::Kind::factorial;
  t.coeff = coeff;
  return t;
}

Tail q_gaussian_tail(double q) {
  Tail t;
  t.kind = Tail::Kind::q_gaussian;
  t.q = q;
  t.power = 1.0;
  return t;
}

// product of [j]_q = 1 + q + ... + q^(j-1), j = 1..n
Rational q_factorial_oracle(const Rational& q, int n) {
  Rational f = 1;
  for (int j = 1; j <= n; ++j) {
    Rational bracket = 0, qp = 1;
    for (int i = 0; i < j; ++i) {
      bracket += qp;
      qp *= q;
    }
    f *= bracket;
  }
  return f;
}

}  // namespace

// --- evaluation ---------------------------------------------------------------

TEST(SeqEval, GeometricPower) {
  EXPECT_DOUBLE_EQ(seq_eval(geometric(Number(2)), 3), 8.0);
  EXPECT_EQ(seq_eval_exact(geometric(Number(2)), 3), Rational(8));
}

TEST(SeqEval, QFactorialMatchesBracketProduct) {
  const Rational q(1, 2);
  auto d = q_factorial(Number(q));
  EXPECT_EQ(seq_eval_exact(d, 2), Rational(3, 2));
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(seq_eval_exact(d, n), q_factorial_oracle(q, n)) << n;
  EXPECT_NEAR(seq_eval(d, 7), to_double(q_factorial_oracle(q, 7)), 1e-12);
}

TEST(SeqEval, QFactorialAtZeroIsOne) {
  auto d = q_factorial(Number(0));
  for (int n = 0; n < 10; ++n) EXPECT_EQ(seq_eval_exact(d, n), Rational(1));
}

TEST(SeqEval, SumOverridesOnlyIndexZero) {
  auto d = sum(geometric(Number(1)), geometric(Number(2)));
  EXPECT_DOUBLE_EQ(seq_eval(d, 0), 1.0);
  EXPECT_DOUBLE_EQ(seq_eval(d, 2), 5.0);
  EXPECT_EQ(seq_eval_exact(d, 3), Rational(9));
}

TEST(SeqEval, PowerSumCarriesScale) {
  auto d = power_sum({Number(3), Number(1)});
  EXPECT_DOUBLE_EQ(seq_eval(d, 0), 1.0);
  EXPECT_DOUBLE_EQ(seq_eval(d, 1), 2.0);
  EXPECT_EQ(seq_eval_exact(d, 2), Rational(5));
  EXPECT_DOUBLE_EQ(d.as<PowerSum>().scale.real(), 0.5);
}

TEST(SeqEval, ExpPolynomialScale) {
  // (n + 1) 2^n + 1, scaled by 1/2
  auto d = exp_polynomial({{poly({1}), Number(1)}, {poly({1, 1}), Number(2)}});
  EXPECT_EQ(seq_eval_exact(d, 0), Rational(1));
  EXPECT_EQ(seq_eval_exact(d, 3), Rational(33, 2));
}

TEST(SeqEval, PolynomialAndRational) {
  EXPECT_DOUBLE_EQ(seq_eval(polynomial(poly({1, 1})), 4), 5.0);
  auto r = rational(poly({1, 1}), poly({1, 2}));
  EXPECT_EQ(seq_eval_exact(r, 3), Rational(4, 7));
}

TEST(SeqEval, ProductAndInverse) {
  auto a = power_sum({Number(2), Number(1)});
  auto b = q_factorial(Number(Rational(1, 3)));
  for (int n = 0; n < 12; ++n) {
    EXPECT_EQ(seq_eval_exact(product(a, inverse(a)), n), Rational(1));
    EXPECT_EQ(seq_eval_exact(product(a, b), n), seq_eval_exact(a, n) * seq_eval_exact(b, n));
  }
}

TEST(SeqEval, PerturbedAddsTail) {
  auto d = perturbed(one(), factorial_tail());
  EXPECT_DOUBLE_EQ(seq_eval(d, 0), 1.0);
  EXPECT_NEAR(seq_eval(d, 3), 1.0 + 1.0 / 6.0, 1e-15);
  Tail v;
  v.values = {Number(0), Number(Rational(1, 2))};
  EXPECT_EQ(seq_eval_exact(perturbed(one(), v), 1), Rational(3, 2));
  EXPECT_EQ(seq_eval_exact(perturbed(one(), v), 2), Rational(1));
}

TEST(SeqEval, PeriodicParity) {
  auto d = periodic({Number(1), Number(Rational(1, 2))});
  EXPECT_EQ(seq_eval_exact(d, 4), Rational(1));
  EXPECT_EQ(seq_eval_exact(d, 5), Rational(1, 2));
}

TEST(SeqEval, IndexBeyondLimitRejected) {
  EvalOptions o;
  o.n_max = 10;
  EXPECT_EQ(code_of([&] { seq_eval(one(), 11, o); }), ErrorCode::InvalidArgument);
}

TEST(SeqEval, OverflowReported) {
  EXPECT_EQ(code_of([] { seq_eval(geometric(Number(10)), 400); }), ErrorCode::Overflow);
  EXPECT_NEAR(seq_log_eval(geometric(Number(10)), 400), 400 * std::log(10.0), 1e-9);
}

TEST(SeqEval, NonPositivePerturbationReported) {
  Tail v;
  v.values = {Number(0), Number(-1)};
  // caught by the eager positivity check
  EXPECT_EQ(code_of([&] { perturbed(one(), v); }), ErrorCode::InvalidDescriptor);
  // beyond the eager range it surfaces on evaluation
  Tail late;
  late.values.assign(kPositivityCheck + 10, Number(0));
  late.values.back() = Number(-2);
  auto d = perturbed(one(), late);
  EXPECT_EQ(code_of([&] { seq_eval(d, kPositivityCheck + 9); }), ErrorCode::NonPositiveValue);
}

TEST(SeqEval, FloatOnlyDescriptorIsNotExact) {
  EXPECT_FALSE(gamma_ratio({0.5, 0.5}, {1.0}).exact_capable());
  EXPECT_EQ(code_of([] { seq_eval_exact(gamma_ratio({0.5, 0.5}, {1.0}), 2); }), ErrorCode::NotExact);
}

TEST(SeqLogEval, Examples) {
  EXPECT_NEAR(seq_log_eval(geometric(Number(2)), 100), 100 * std::log(2.0), 1e-12);
  EXPECT_EQ(seq_log_eval(power_sum({Number(3), Number(1)}), 0), 0.0);
  // lgamma oracle
  double expect = std::log(24.0 * 24.0 / 40320.0);
  EXPECT_NEAR(seq_log_eval(gamma_ratio({1.0, 1.0}, {2.0}), 4), expect, 1e-12);
}

TEST(SeqLogEval, LargeIndexStaysFinite) {
  auto d = power_sum({Number(5), Number(3), Number(2)});
  double v = seq_log_eval(d, 4000);
  EXPECT_NEAR(v, 4000 * std::log(5.0) - std::log(3.0), 1e-9 * std::abs(v));
}

TEST(GrowthRate, KnownClosedForms) {
  EXPECT_DOUBLE_EQ(*growth_rate(power_sum({Number(2), Number(1)})), 2.0);
  EXPECT_DOUBLE_EQ(*growth_rate(geometric(Number(3))), 3.0);
  EXPECT_DOUBLE_EQ(*growth_rate(polynomial(poly({1, 1}))), 1.0);
}

// --- construction -------------------------------------------------------------

TEST(Descriptor, ConstructorsValidate) {
  EXPECT_EQ(code_of([] { geometric(Number(-1)); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { polynomial(poly({2, 1})); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { power_sum({Number(2), Number(2)}); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { q_factorial(Number(1)); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { gamma_ratio({1.0, 1.0}, {1.5}); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { exp_polynomial({{poly({1}), Number(2)}, {poly({1}), Number(1)}}); }),
            ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { periodic({Number(2), Number(1)}); }), ErrorCode::InvalidDescriptor);
  Tail bad;
  bad.values = {Number(1)};
  EXPECT_EQ(code_of([&] { perturbed(one(), bad); }), ErrorCode::InvalidDescriptor);
}

TEST(Descriptor, PowerSumBasesSortedDescending) {
  auto d = power_sum({Number(1), Number(3), Number(2)});
  const auto& b = d.as<PowerSum>().bases;
  EXPECT_EQ(b[0].real(), 3.0);
  EXPECT_EQ(b[2].real(), 1.0);
}

TEST(Descriptor, PositivityCheckedOnConstruction) {
  // 1 - n vanishes at n = 1
  EXPECT_THROW(polynomial(poly({1, -1})), Error);
  // 1 - n^2/100 turns negative at n = 11
  EXPECT_THROW(polynomial(poly({1, 0, Rational(-1, 100)})), Error);
  // n^2 - 41 n + 421 stays positive but w(0) != 1, scaled by 1/421 it passes
  EXPECT_NO_THROW(polynomial(poly({1, Rational(-41, 421), Rational(1, 421)})));
}

// --- transforms ---------------------------------------------------------------

TEST(Borel, DividesByM) {
  ExactSeries u(std::vector<Rational>{1, 1, 1});
  EXPECT_EQ(borel(geometric(Number(2)), u), ExactSeries(std::vector<Rational>{1, Rational(1, 2), Rational(1, 4)}));
  ExactSeries v(std::vector<Rational>{1, 2, 3});
  EXPECT_EQ(borel(polynomial(poly({1, 1})), v), ExactSeries(std::vector<Rational>{1, 1, 1}));
  auto f = borel(geometric(Number(2)), to_float(u));
  EXPECT_DOUBLE_EQ(f[2].real(), 0.25);
}

TEST(QBorel, Examples) {
  TruncatedSeries u(std::vector<Complex>(4, 1.0));
  auto b = q_borel(1.0, 2.0, u);
  EXPECT_DOUBLE_EQ(b[0].real(), 1.0);
  EXPECT_DOUBLE_EQ(b[1].real(), 1.0);
  EXPECT_DOUBLE_EQ(b[2].real(), 0.5);
  EXPECT_DOUBLE_EQ(b[3].real(), 0.125);
  TruncatedSeries e3(std::vector<Complex>{0.0, 0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(q_borel(2.0, 2.0, e3)[3].real(), 1.0 / 64.0);
}

TEST(QBorel, RejectsBadParameters) {
  TruncatedSeries u(std::vector<Complex>(3, 1.0));
  EXPECT_EQ(code_of([&] { q_borel(1.0, 1.0, u); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { q_borel(0.0, 2.0, u); }), ErrorCode::InvalidArgument);
}

TEST(MomentDerivative, FactorialWeightIsUsualDerivative) {
  ExactSeries u(std::vector<Rational>{1, 1, Rational(1, 2), Rational(1, 6)});
  EXPECT_EQ(moment_derivative(one(), true, u), ExactSeries(std::vector<Rational>{1, 1, Rational(1, 2)}));
}

TEST(MomentDerivative, UnitWeightIsShift) {
  ExactSeries u(std::vector<Rational>{1, 2, 3});
  EXPECT_EQ(moment_derivative(one(), false, u), ExactSeries(std::vector<Rational>{2, 3}));
  TruncatedSeries f(std::vector<Complex>{1.0, 2.0, 3.0});
  auto d = moment_derivative(one(), false, f);
  EXPECT_EQ(d.degree(), 1u);
  EXPECT_DOUBLE_EQ(d[1].real(), 3.0);
}

TEST(MomentDerivative, DegreeZeroIsEmpty) {
  ExactSeries u(std::vector<Rational>{1});
  EXPECT_EQ(code_of([&] { moment_derivative(one(), true, u); }), ErrorCode::EmptySeries);
}

TEST(MomentRatio, StableForLargeIndices) {
  auto m = power_sum({Number(2), Number(1)});
  // mu(n) = m(n) n!, ratio mu(301)/mu(300) = 301 (2^301 + 1)/(2^300 + 1) ~ 602
  EXPECT_NEAR(moment_ratio(m, true, 301, 300), 602.0, 1e-9);
  EXPECT_EQ(moment_ratio_exact(m, true, 3, 2), Rational(3 * 9, 5));
}

TEST(Series, EmptyAndNonFiniteRejected) {
  EXPECT_EQ(code_of([] { TruncatedSeries(std::vector<Complex>{}); }), ErrorCode::EmptySeries);
  EXPECT_EQ(code_of([] { TruncatedSeries(std::vector<Complex>{Complex(NAN, 0)}); }), ErrorCode::InvalidArgument);
}

TEST(Series, JsonRoundTrip) {
  TruncatedSeries s(std::vector<Complex>{{1.0, 0.0}, {0.5, -2.0}});
  Json j = series_to_json(s);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[1], Json::array({0.5, -2.0}));
  EXPECT_EQ(series_from_json(j), s);
  ExactSeries e(std::vector<Rational>{1, Rational(-2, 3)});
  EXPECT_EQ(exact_series_from_json(series_to_json(e)), e);
  EXPECT_EQ(exact_series_from_json(Json::array({1, "1/3"}))[1], Rational(1, 3));
}

// --- order and Gevrey estimates -----------------------------------------------

TEST(EstimateOrder, GeometricIsOrderZero) {
  auto e = estimate_order(geometric(Number(3)), {8, 128});
  EXPECT_LT(std::abs(e.s_hat), 0.05);
  EXPECT_TRUE(e.order_zero());
  EXPECT_NEAR(e.log_C, std::log(3.0), 1e-6);
}

TEST(EstimateOrder, FactorialIsOrderOne) {
  auto e = estimate_order(factorial_seq(), {8, 128});
  EXPECT_NEAR(e.s_hat, 1.0, 0.05);
  EXPECT_FALSE(e.order_zero());
}

TEST(EstimateOrder, PowerSumIsOrderZero) {
  EXPECT_LT(std::abs(estimate_order(power_sum({Number(2), Number(1)})).s_hat), 0.05);
}

TEST(EstimateOrder, SmallWindowRejected) {
  EXPECT_EQ(code_of([] { estimate_order(one(), {8, 20}); }), ErrorCode::WindowTooSmall);
}

TEST(GevreyEstimate, InverseFactorialIsOrderMinusOne) {
  std::vector<double> la(257);
  for (std::size_t n = 0; n < la.size(); ++n) la[n] = -std::lgamma(n + 1.0);
  auto e = gevrey_order_estimate_log(la);
  EXPECT_NEAR(e.s_hat, -1.0, 0.05);
  EXPECT_FALSE(e.is_minus_infinity_evidence.at(0.5));
  EXPECT_TRUE(e.is_minus_infinity_evidence.at(1.0));
  EXPECT_FALSE(e.minus_infinity());
}

TEST(GevreyEstimate, QGaussianDecayIsMinusInfinity) {
  std::vector<double> la(257);
  for (std::size_t n = 0; n < la.size(); ++n) la[n] = -0.5 * n * (n - 1.0) * std::log(2.0);
  auto e = gevrey_order_estimate_log(la);
  for (double k : kDefaultProbeKs) EXPECT_TRUE(e.is_minus_infinity_evidence.at(k)) << k;
  EXPECT_TRUE(e.minus_infinity());
}

TEST(GevreyEstimate, ConstantCoefficients) {
  TruncatedSeries u(std::vector<Complex>(257, 1.0));
  auto e = gevrey_order_estimate(u);
  EXPECT_NEAR(e.s_hat, 0.0, 1e-9);
  EXPECT_LT(e.fit_residual, 1e-9);
}

TEST(GevreyEstimate, ZeroWindowRejected) {
  TruncatedSeries u(std::vector<Complex>(257, 0.0));
  EXPECT_EQ(code_of([&] { gevrey_order_estimate(u); }), ErrorCode::AllZeroWindow);
}

TEST(GevreyEstimate, UserProbesAppear) {
  std::vector<double> la(257);
  for (std::size_t n = 0; n < la.size(); ++n) la[n] = -std::lgamma(n + 1.0);
  auto e = gevrey_order_estimate_log(la, {}, {0.5, 1.0, 3.0});
  // the default probes always run alongside the requested ones
  EXPECT_EQ(e.is_minus_infinity_evidence.size(), 5u);
  EXPECT_TRUE(e.is_minus_infinity_evidence.at(3.0));
}

TEST(PerturbationCheck, WitnessPassesSummabilityFailsQ) {
  auto m = perturbed(one(), q_gaussian_tail(2.0));
  auto ev = perturbation_check(m, one(), kDefaultProbeKs, {16, 256}, QModeParams{});
  EXPECT_TRUE(ev.all_pass());
  ASSERT_TRUE(ev.q.has_value());
  // r(n) = n 2^(-n(n-1)/2) has q-Gevrey order exactly -1: bounded at s = 1, not above
  EXPECT_NEAR(ev.q->sigma_hat, -1.0, 0.1);
  for (const auto& p : ev.q->probes) EXPECT_EQ(p.holds, p.s <= 1.0) << p.s;
  EXPECT_FALSE(ev.q->minus_infinity());
}

TEST(PerturbationCheck, InverseFactorialTailFailsAtHalf) {
  auto ev = perturbation_check(perturbed(one(), factorial_tail()), one());
  EXPECT_FALSE(ev.all_pass());
  for (const auto& p : ev.probes) {
    if (p.k == 0.5) {
      EXPECT_FALSE(p.holds);
    }
  }
  ASSERT_TRUE(ev.gevrey.has_value());
  EXPECT_NEAR(ev.gevrey->s_hat, -1.0, 0.05);
}

TEST(PerturbationCheck, IdenticalSequencesPassVacuously) {
  auto m = power_sum({Number(2), Number(1)});
  auto ev = perturbation_check(m, m);
  EXPECT_TRUE(ev.identical);
  EXPECT_TRUE(ev.all_pass());
}

TEST(PerturbationCheck, ResidualSignFromTail) {
  auto [la, s] = residual_log(perturbed(one(), factorial_tail(-0.5)), one(), 3);
  EXPECT_EQ(s, -1);
  EXPECT_NEAR(la, std::log(0.5 / 6.0), 1e-12);
}

// --- JSON ---------------------------------------------------------------------

TEST(DescriptorJson, KindNames) {
  EXPECT_EQ(to_json(geometric(Number(2)))["kind"], "geometric");
  EXPECT_EQ(to_json(power_sum({Number(2), Number(1)}))["kind"], "power_sum");
  EXPECT_EQ(to_json(q_factorial(Number(Rational(1, 2))))["kind"], "q_factorial");
  EXPECT_EQ(to_json(inverse(one()))["kind"], "inverse");
}

TEST(DescriptorJson, ExactRationalsAsNumDen) {
  Json j = to_json(geometric(Number(Rational(3, 2))));
  EXPECT_EQ(j["a"], Json({{"den", 2}, {"num", 3}}));
}

TEST(DescriptorJson, RoundTripEveryKind) {
  Tail v;
  v.values = {Number(0), Number(Rational(1, 4))};
  std::vector<SequenceDescriptor> all{
      geometric(Number(2)),
      polynomial(poly({1, 2, 1})),
      rational(poly({1, 1}), poly({1, 3})),
      power_sum({Number(3), Number(2), Number(1)}),
      exp_polynomial({{poly({1}), Number(1)}, {poly({1, 1}), Number(2)}}),
      q_factorial(Number(Rational(3, 10))),
      gamma_ratio({0.5, 0.5}, {1.0}),
      periodic({Number(1), Number(Rational(1, 2))}),
      q_gaussian(Number(2), 1.0),
      product(one(), geometric(Number(3))),
      inverse(power_sum({Number(2), Number(1)})),
      sum(one(), geometric(Number(2))),
      perturbed(one(), v),
      perturbed(one(), factorial_tail()),
      perturbed(one(), q_gaussian_tail(10.0)),
  };
  for (const auto& d : all) {
    Json j = to_json(d);
    auto back = descriptor_from_json(parse_json(canonical_dump(j)));
    EXPECT_EQ(canonical_dump(to_json(back)), canonical_dump(j)) << j.dump();
    EXPECT_TRUE(same_descriptor(back, d));
    EXPECT_EQ(seq_log_eval(back, 9), seq_log_eval(d, 9));
  }
}

TEST(DescriptorJson, DataFilesLoad) {
  auto d = descriptor_from_json(read_json_file(std::string(SUMMA_TEST_DATA) + "/onePlus2n.json"));
  EXPECT_EQ(d.kind(), Kind::power_sum);
  EXPECT_DOUBLE_EQ(seq_eval(d, 3), 4.5);
}

TEST(DescriptorJson, Malformed) {
  EXPECT_EQ(code_of([] { descriptor_from_json(Json{{"kind", "nope"}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { descriptor_from_json(Json{{"kind", "geometric"}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { descriptor_from_json(Json::array()); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { descriptor_from_json(Json{{"kind", "geometric"}, {"a", -2}}); }),
            ErrorCode::InvalidDescriptor);
}

TEST(DescriptorJson, CanonicalStringDistinguishesStructure) {
  EXPECT_NE(canonical_string(product(one(), geometric(Number(2)))),
            canonical_string(product(geometric(Number(2)), one())));
  EXPECT_EQ(canonical_string(geometric(Number(Rational(4, 2)))), canonical_string(geometric(Number(2))));
}
