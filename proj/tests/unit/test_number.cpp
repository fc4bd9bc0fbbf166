#include <gtest/gtest.h>

#include <cmath>

#include "summa/error.hpp"
#include "summa/json_util.hpp"
#include "summa/number.hpp"
#include "summa/polynomial.hpp"

using namespace summa;

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Rational, ExactRationalOfDouble) {
  EXPECT_EQ(exact_rational(0.5), Rational(1, 2));
  EXPECT_EQ(exact_rational(-3.0), Rational(-3));
  EXPECT_DOUBLE_EQ(to_double(exact_rational(0.1)), 0.1);
}

TEST(Number, ExactnessTracksConstruction) {
  EXPECT_TRUE(Number(Rational(1, 3)).is_exact());
  EXPECT_TRUE(Number(7).is_exact());
  EXPECT_FALSE(Number(0.5).is_exact());
  EXPECT_FALSE(Number(Complex(1.0, 2.0)).is_exact());
  EXPECT_THROW(Number(0.5).exact(), Error);
  EXPECT_TRUE(Number(0).is_zero());
  EXPECT_EQ(Number(Rational(1, 2)), Number(Rational(2, 4)));
}

TEST(Polynomial, EvaluatesLowestDegreeFirst) {
  Polynomial p(std::vector<Rational>{1, 2, 3});  // 1 + 2x + 3x^2
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(p.eval_exact(Rational(2)), Rational(17));
  EXPECT_NEAR(p(2.0).real(), 17.0, 0.0);
  EXPECT_TRUE(p.is_exact());
}

TEST(Polynomial, TrimsTrailingZeros) {
  Polynomial p(std::vector<Rational>{1, 0, 0});
  EXPECT_EQ(p.degree(), 0u);
  EXPECT_TRUE(Polynomial().is_zero());
}

TEST(Polynomial, ArithmeticMatchesHandExpansion) {
  Polynomial a(std::vector<Rational>{1, 1});  // 1 + x
  Polynomial sq = a * a;
  EXPECT_EQ(sq, Polynomial(std::vector<Rational>{1, 2, 1}));
  EXPECT_EQ(a.pow(3), Polynomial(std::vector<Rational>{1, 3, 3, 1}));
  EXPECT_EQ(sq - a, Polynomial(std::vector<Rational>{0, 1, 1}));
  EXPECT_EQ(sq.derivative(), Polynomial(std::vector<Rational>{2, 2}));
  // (x+1)^2 at x -> x + 1 is (x+2)^2
  EXPECT_EQ(sq.shifted(Number(1)), Polynomial(std::vector<Rational>{4, 4, 1}));
}

TEST(Polynomial, ExactDivisionAndGcd) {
  Polynomial a(std::vector<Rational>{2, 3, 1});  // (x+1)(x+2)
  Polynomial b(std::vector<Rational>{1, 1});
  auto [q, r] = divmod_exact(a, b);
  EXPECT_EQ(q, Polynomial(std::vector<Rational>{2, 1}));
  EXPECT_TRUE(r.is_zero());
  Polynomial c(std::vector<Rational>{3, 4, 1});  // (x+1)(x+3)
  EXPECT_EQ(gcd_exact(a, c), b);
}

TEST(Polynomial, FloatDivisionReconstructs) {
  Polynomial a(std::vector<Complex>{{1, 0}, {0, 1}, {2, 0}, {1, 0}});
  Polynomial b(std::vector<Complex>{{1, 0}, {1, 0}});
  auto [q, r] = divmod(a, b);
  for (double x : {-2.0, 0.3, 1.7}) {
    Complex lhs = a(x), rhs = q(x) * b(x) + r(x);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(Json, CanonicalDumpSortsKeysAndKeepsFloats) {
  Json j = {{"b", 1}, {"a", 0.5}, {"c", 2.0}};
  EXPECT_EQ(canonical_dump(j), "{\"a\":0.5,\"b\":1,\"c\":2.0}");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Json, NumberRoundTrip) {
  for (const Number& n : {Number(Rational(-3, 7)), Number(5), Number(0.125), Number(Complex(1.5, -2.0))}) {
    Number back = number_from_json(number_to_json(n));
    EXPECT_EQ(back.is_exact(), n.is_exact());
    EXPECT_EQ(back.value(), n.value());
  }
  EXPECT_EQ(number_from_json(Json("1/3")).exact(), Rational(1, 3));
  EXPECT_EQ(number_from_json(Json{{"num", 2}, {"den", 6}}).exact(), Rational(1, 3));
}

TEST(Json, PolynomialRoundTrip) {
  Polynomial p(std::vector<Rational>{Rational(1), Rational(-1, 2), Rational(3)});
  EXPECT_EQ(polynomial_from_json(polynomial_to_json(p)), p);
}

TEST(Json, MalformedTextIsParseError) {
  try {
    parse_json("{\"a\": ");
    FAIL() << "expected a ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Error, NamesAreStable) {
  EXPECT_EQ(error_code_name(ErrorCode::ForbiddenDirection), "ForbiddenDirection");
  EXPECT_EQ(error_code_name(ErrorCode::LeadingCoefficientNotConstant), "LeadingCoefficientNotConstant");
}
