#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "summa/continuation/growth.hpp"
#include "summa/error.hpp"
#include "summa/json_util.hpp"
#include "summa/momentpde/momentpde.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/descriptor_json.hpp"

using namespace summa;
using namespace summa::pde;
using std::numbers::pi;

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

BigInt fact(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

std::vector<Number> ones(std::size_t count) { return std::vector<Number>(count, Number(1)); }

CauchyProblem heat(const seq::SequenceDescriptor& m, std::size_t N = 8, std::size_t M = 24) {
  CauchyProblem cp;
  cp.P = heat_operator();
  cp.m = m;
  cp.phi = {ones(M + 1)};
  cp.N = N;
  cp.M = M;
  return cp;
}

Json load(const std::string& name) { return read_json_file(std::string(SUMMA_TEST_DATA) + "/" + name); }

seq::SequenceDescriptor one_plus_2n() { return seq::power_sum({Number(2), Number(1)}); }

}  // namespace

TEST(Problem, HeatOperatorShape) {
  auto P = heat_operator();
  EXPECT_TRUE(is_heat_operator(P));
  CauchyProblem cp = heat(seq::one());
  EXPECT_EQ(cp.order(), 1u);
  EXPECT_EQ(cp.zeta_degree(), 2u);
  EXPECT_TRUE(cp.exact_capable());
  EXPECT_NO_THROW(validate(cp));
  EXPECT_FALSE(is_heat_operator({PTerm{1, 0, Number(1)}}));
}

TEST(Problem, ValidationErrors) {
  CauchyProblem cp = heat(seq::one());
  cp.P.push_back(PTerm{1, 1, Number(2)});
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::LeadingCoefficientNotConstant);

  cp = heat(seq::one());
  cp.P = {PTerm{1, 2, Number(1)}, PTerm{0, 0, Number(1)}};
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::LeadingCoefficientNotConstant);

  // equal and opposite leading terms merge away
  cp = heat(seq::one());
  cp.P.push_back(PTerm{1, 0, Number(-1)});
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::InvalidArgument);

  cp = heat(seq::one(), 8, 15);
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::TruncationStarved);
  EXPECT_EQ(code_of([&] { solve_formal(cp); }), ErrorCode::TruncationStarved);

  cp = heat(seq::one());
  cp.phi.push_back(ones(3));
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::InvalidArgument);

  cp = heat(seq::one());
  cp.P = {PTerm{0, 2, Number(1)}};
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::InvalidArgument);
  cp.P = {};
  EXPECT_EQ(code_of([&] { validate(cp); }), ErrorCode::InvalidArgument);
}

TEST(Problem, NotExactRefused) {
  CauchyProblem cp = heat(seq::one());
  cp.P[1].coeff = Number(-1.5);
  EXPECT_FALSE(cp.exact_capable());
  EXPECT_EQ(code_of([&] { solve_formal_exact(cp); }), ErrorCode::NotExact);
  EXPECT_NO_THROW(solve_formal(cp));
}

TEST(Problem, JsonFiles) {
  CauchyProblem cp = problem_from_json(load("heat.json"));
  EXPECT_TRUE(is_heat_operator(cp.P));
  EXPECT_EQ(cp.N, 8u);
  EXPECT_EQ(cp.M, 24u);
  ASSERT_EQ(cp.phi.size(), 1u);
  EXPECT_EQ(cp.phi[0].size(), 25u);
  EXPECT_DOUBLE_EQ(seq::seq_eval(cp.m, 7), 1.0);

  Json back = problem_to_json(cp);
  EXPECT_EQ(canonical_dump(back), canonical_dump(load("heat.json")));
  EXPECT_EQ(canonical_dump(problem_to_json(problem_from_json(back))), canonical_dump(back));

  CauchyProblem bad = problem_from_json(load("heat_malformed.json"));
  EXPECT_EQ(code_of([&] { validate(bad); }), ErrorCode::LeadingCoefficientNotConstant);

  CauchyProblem ps = problem_from_json(load("heat_onePlus2n.json"));
  EXPECT_TRUE(seq::same_descriptor(ps.m, one_plus_2n()));
}

TEST(Problem, JsonParseErrors) {
  Json j = load("heat.json");
  for (const char* key : {"P", "phi"}) {
    Json k = j;
    k.erase(key);
    EXPECT_EQ(code_of([&] { problem_from_json(k); }), ErrorCode::ParseError) << key;
  }
  Json k = j;
  k.erase("m");
  EXPECT_TRUE(seq::same_descriptor(problem_from_json(k).m, seq::one()));
  k["P"] = 3;
  EXPECT_EQ(code_of([&] { problem_from_json(k); }), ErrorCode::ParseError);
  k = j;
  k["P"][0]["lambda_pow"] = -1;
  EXPECT_EQ(code_of([&] { problem_from_json(k); }), ErrorCode::ParseError);
  k = j;
  k["N"] = -2;
  EXPECT_EQ(code_of([&] { problem_from_json(k); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { problem_from_json(Json::array()); }), ErrorCode::ParseError);
}

TEST(SolveFormal, HeatWithUnitMoment) {
  // u_n = d^{2n} phi / n! on the truncated phi, so coefficient j is (j+2n)!/(j! n!) while j + 2n <= M
  CauchyProblem cp = heat(seq::one());
  ExactBivariate u = solve_formal_exact(cp);
  ASSERT_EQ(u.levels(), 9u);
  EXPECT_EQ(u.z_degree(), 24u);
  for (std::size_t n = 0; n <= 8; ++n) {
    EXPECT_EQ(u.at(n, 0), Rational(fact(2 * n) / fact(n))) << n;
    for (std::size_t j = 0; j <= 24; ++j) {
      Rational expect = j + 2 * n <= 24 ? Rational(fact(j + 2 * n), fact(j) * fact(n)) : Rational(0);
      EXPECT_EQ(u.at(n, j), expect) << n << "," << j;
    }
  }
  BivariateSeries f = solve_formal(cp);
  EXPECT_EQ(f, to_float(u));
}

TEST(SolveFormal, HeatWithMomentDividesByM) {
  for (const auto& m : {one_plus_2n(), seq::geometric(Number(Rational(1, 3))), seq::q_factorial(Number(Rational(1, 2)))}) {
    ExactBivariate u = solve_formal_exact(heat(m));
    for (std::size_t n = 0; n <= 8; ++n) {
      Rational mn = seq::seq_eval_exact(m, n);
      EXPECT_EQ(u.at(n, 0), Rational(fact(2 * n) / fact(n)) / mn) << n;
    }
  }
}

TEST(SolveFormal, PureLambdaIsConstantInT) {
  CauchyProblem cp;
  cp.P = {PTerm{1, 0, Number(3)}};
  cp.m = one_plus_2n();
  cp.phi = {{Number(1), Number(-2), Number(Rational(1, 7))}};
  cp.N = 6;
  cp.M = 4;
  ExactBivariate u = solve_formal_exact(cp);
  EXPECT_EQ(u.at(0, 0), Rational(1));
  EXPECT_EQ(u.at(0, 1), Rational(-2));
  EXPECT_EQ(u.at(0, 2), Rational(1, 7));
  EXPECT_EQ(u.at(0, 3), Rational(0));
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t j = 0; j <= 4; ++j) EXPECT_EQ(u.at(n, j), Rational(0));
}

TEST(SolveFormal, InitialDataNormalization) {
  // d^j_{m Gamma_1} u(0) = mu(j) u_j with mu(n) = m(n) n!; by hand for j = 0, 1
  CauchyProblem cp;
  cp.P = {PTerm{2, 0, Number(1)}, PTerm{0, 1, Number(1)}};
  cp.m = one_plus_2n();
  cp.phi = {{Number(5), Number(1)}, {Number(2), Number(Rational(-3, 4))}};
  cp.N = 4;
  cp.M = 6;
  ExactBivariate u = solve_formal_exact(cp);
  EXPECT_EQ(u.at(0, 0), Rational(5));
  EXPECT_EQ(u.at(0, 1), Rational(1));
  // m(1) = 3/2, so mu(1) = 3/2
  EXPECT_EQ(u.at(1, 0), Rational(4, 3));
  EXPECT_EQ(u.at(1, 1), Rational(-1, 2));
  // m(2) = 5/2, mu(2) = 5: mu(2) u_2 = -d_z u_0 = -1
  EXPECT_EQ(u.at(2, 0), Rational(-1, 5));
  EXPECT_EQ(u.at(2, 1), Rational(0));
}

TEST(SolveFormal, ZeroDegreeProblem) {
  CauchyProblem cp = heat(one_plus_2n(), 0, 4);
  ExactBivariate u = solve_formal_exact(cp);
  EXPECT_EQ(u.levels(), 1u);
  EXPECT_EQ(u.at(0, 3), Rational(1));
}

TEST(SolveFormal, SolutionAnnihilatedByOperator) {
  CauchyProblem cp = heat(one_plus_2n());
  ExactBivariate u = solve_formal_exact(cp);
  ExactBivariate r = apply_operator(cp.P, cp.m, u);
  EXPECT_EQ(r.levels(), 8u);
  for (std::size_t n = 0; n < r.levels(); ++n)
    for (std::size_t j = 0; j <= r.z_degree(); ++j) EXPECT_EQ(r.at(n, j), Rational(0));
}

TEST(SolveFormal, BivariateJson) {
  ExactBivariate u = solve_formal_exact(heat(seq::one(), 2, 4));
  Json j = bivariate_to_json(to_float(u));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0].size(), 5u);
  Json e = bivariate_to_json(u);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(number_from_json(e[1][0]).exact(), Rational(2));
}

TEST(BasicBivariate, RaggedLevelsRejected) {
  std::vector<seq::TruncatedSeries> levels{seq::TruncatedSeries({1.0, 2.0}), seq::TruncatedSeries({1.0})};
  EXPECT_EQ(code_of([&] { BivariateSeries b(levels); }), ErrorCode::ShapeMismatch);
  BivariateSeries e;
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.levels(), 0u);
}

TEST(BorelPairCheck, HeatPairExactAndFloat) {
  auto m = one_plus_2n();
  CauchyProblem cp = heat(m);
  auto ex = check_prop9(solve_formal_exact(cp), solve_formal_exact(classical(cp)), m);
  EXPECT_TRUE(ex.holds);
  EXPECT_EQ(ex.max_residual, 0.0);
  auto fl = check_prop9(solve_formal(cp), solve_formal(classical(cp)), m);
  EXPECT_TRUE(fl.holds);
  EXPECT_LE(fl.max_residual, 1e-12);
}

TEST(BorelPairCheck, BumpedCoefficientFails) {
  auto m = one_plus_2n();
  CauchyProblem cp = heat(m);
  BivariateSeries u = solve_formal(cp), v = solve_formal(classical(cp));
  std::vector<seq::TruncatedSeries> levels = u.data();
  auto c = levels[3].coeffs();
  c[20] += 1e-6;  // v_3 vanishes there (20 + 6 > M)
  levels[3] = seq::TruncatedSeries(c);
  auto r = check_prop9(BivariateSeries(levels), v, m);
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.max_residual, 1e-6, 1e-12);
}

TEST(BorelPairCheck, VacuousAndShapeMismatch) {
  auto m = one_plus_2n();
  auto r = check_prop9(BivariateSeries{}, BivariateSeries{}, m);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.max_residual, 0.0);
  CauchyProblem z = heat(m, 0, 4);
  EXPECT_TRUE(check_prop9(solve_formal_exact(z), solve_formal_exact(classical(z)), m).holds);

  BivariateSeries a = solve_formal(heat(m, 3, 8)), b = solve_formal(heat(m, 4, 8));
  EXPECT_EQ(code_of([&] { check_prop9(a, b, m); }), ErrorCode::ShapeMismatch);
  BivariateSeries c = solve_formal(heat(m, 3, 10));
  EXPECT_EQ(code_of([&] { check_prop9(a, c, m); }), ErrorCode::ShapeMismatch);
}

TEST(Operators, ErrorsOnShortSeries) {
  seq::ExactSeries one_term({Rational(1)});
  EXPECT_EQ(code_of([&] { central_binomial_operator(one_term); }), ErrorCode::EmptySeries);
  EXPECT_EQ(code_of([&] { q_derivative_operator(Rational(1), seq::ExactSeries({Rational(1), Rational(2)})); }),
            ErrorCode::InvalidArgument);
}

TEST(Operators, CentralBinomialOnMonomials) {
  // 4 d_t - 2 shift on t^3: coefficient 2 is 4*3 - 2 = 10 = mu(3)/mu(2) for mu(n) = (2n)!/n!
  seq::ExactSeries t3({Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)});
  auto d = central_binomial_operator(t3);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[2], Rational(10));
  EXPECT_EQ(d[0], Rational(0));
  EXPECT_EQ(Rational(fact(6) / fact(3)) / Rational(fact(4) / fact(2)), Rational(10));
}

TEST(HeatProbe, CentralBinomialForUnitMoment) {
  HeatProbeOptions opts;
  auto rep = heat_summability_probe(seq::one(), ones(121), 0.0, {pi}, opts);
  EXPECT_EQ(rep.closed_form, "central_binomial");
  ASSERT_TRUE(rep.evaluator.has_value());
  ASSERT_EQ(rep.w.size(), 61u);
  // w_n = C(2n, n)
  double cb = 1.0;
  for (std::size_t n = 0; n < rep.w.size(); ++n) {
    if (n > 0) cb *= 2.0 * (2.0 * static_cast<double>(n) - 1.0) / static_cast<double>(n);
    EXPECT_NEAR(rep.w[n].real(), cb, 1e-12 * cb) << n;
    EXPECT_EQ(rep.w[n], rep.w_classical[n]);
  }
  for (double r : {0.02, 0.05, 0.1}) {
    for (double th : {0.0, 1.0, 2.5, pi, 4.0}) {
      Complex t = std::polar(r, th);
      Complex ps = 0.0, tp = 1.0;
      for (std::size_t n = 0; n < rep.w.size(); ++n) {
        ps += rep.w[n] * tp;
        tp *= t;
      }
      EXPECT_LE(std::abs((*rep.evaluator)(t) - ps), 1e-10) << t;
    }
  }
  for (double r : {0.15, 0.2})
    for (double th : {0.3, pi / 2, pi}) {
      Complex t = std::polar(r, th);
      EXPECT_LE(std::abs((*rep.evaluator)(t) - rep.evaluator->partial_sum(t, 400)), 1e-10) << t;
    }
  ASSERT_TRUE(rep.scan.has_value());
  ASSERT_EQ(rep.scan->rays.size(), 1u);
  EXPECT_EQ(rep.scan->rays[0].verdict, cont::Verdict::less_than_exponential);
  EXPECT_TRUE(rep.disc.has_value());
  EXPECT_TRUE(rep.note.empty());
}

TEST(HeatProbe, BlowupNearQuarter) {
  auto rep = heat_summability_probe(seq::one(), ones(121), 0.0, {});
  ASSERT_TRUE(rep.evaluator.has_value());
  EXPECT_FALSE(rep.scan.has_value());
  auto b = cont::approach_blowup(*rep.evaluator, {0.1, 0.05, 0.02, 0.01}, 0.01, 10.0);
  EXPECT_TRUE(b.detected);
  EXPECT_NEAR(b.radius, 0.25, 0.02);
}

TEST(HeatProbe, PreservingMomentKeepsVerdicts) {
  const std::vector<double> dirs{pi / 2, pi, 3 * pi / 2};
  auto base = heat_summability_probe(seq::one(), ones(121), 0.0, dirs);
  auto rep = heat_summability_probe(one_plus_2n(), ones(121), 0.0, dirs);
  ASSERT_TRUE(base.scan && rep.scan);
  ASSERT_EQ(rep.scan->rays.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rep.scan->rays[i].verdict, base.scan->rays[i].verdict) << i;
    EXPECT_EQ(rep.scan->rays[i].verdict, cont::Verdict::less_than_exponential) << i;
  }
  for (std::size_t n = 0; n < rep.w.size(); ++n) {
    double mn = std::pow(2.0, static_cast<double>(n)) / 2.0 + 0.5;
    EXPECT_NEAR(rep.w[n].real() * mn, rep.w_classical[n].real(), 1e-12 * rep.w_classical[n].real()) << n;
  }
}

TEST(HeatProbe, PolynomialDataIsEntire) {
  // phi = 1 + 3 z^2 + 5 z^5: w = 1 + 6 t
  HeatProbeOptions opts;
  opts.polynomial_data = true;
  opts.terms = 40;
  std::vector<Number> phi{Number(1), Number(0), Number(3), Number(0), Number(0), Number(5)};
  const std::vector<double> dirs{pi / 4, pi / 2, pi, 3 * pi / 2, 7 * pi / 4};
  auto rep = heat_summability_probe(seq::one(), phi, 0.0, dirs, opts);
  EXPECT_EQ(rep.closed_form, "polynomial");
  EXPECT_EQ(rep.w.size(), 41u);
  EXPECT_EQ(rep.w[0], Complex(1.0));
  EXPECT_EQ(rep.w[1], Complex(6.0));
  for (std::size_t n = 2; n < rep.w.size(); ++n) EXPECT_EQ(rep.w[n], Complex(0.0));
  ASSERT_TRUE(rep.scan.has_value());
  for (const auto& ray : rep.scan->rays) EXPECT_EQ(ray.verdict, cont::Verdict::less_than_exponential) << ray.theta;
}

TEST(HeatProbe, OffCentreTraceUsesFloat) {
  // z0 = 1/2: u_n(1/2) = (2n)!/n! * 2^(2n+1) for the untruncated phi, so rho = 4
  auto rep = heat_summability_probe(seq::one(), ones(201), 0.5, {pi});
  ASSERT_GE(rep.w.size(), 5u);
  EXPECT_NEAR(rep.w[0].real(), 2.0, 1e-12);
  EXPECT_NEAR(rep.w[1].real(), 16.0, 1e-9);
}

TEST(HeatProbe, UnrecognizedFallsBackToDisc) {
  // phi = 1/(1-z)^2: w_n = (2n+1) C(2n, n), no registry entry
  std::vector<Number> phi;
  for (int j = 0; j <= 120; ++j) phi.emplace_back(j + 1);
  auto rep = heat_summability_probe(seq::one(), phi, 0.0, {pi});
  EXPECT_TRUE(rep.closed_form.empty());
  EXPECT_FALSE(rep.evaluator.has_value());
  EXPECT_FALSE(rep.scan.has_value());
  EXPECT_NE(rep.note.find("UnrecognizedClosedForm"), std::string::npos);
  ASSERT_TRUE(rep.disc.has_value());
}

TEST(HeatProbe, Errors) {
  EXPECT_EQ(code_of([] { heat_summability_probe(seq::one(), {}, 0.0, {pi}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { heat_summability_probe(seq::one(), ones(2), 0.0, {pi}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { heat_summability_probe(seq::one(), ones(41), 0.0, {0.0}); }), ErrorCode::ForbiddenDirection);
}
