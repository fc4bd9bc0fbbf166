#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "corpus.hpp"
#include "summa/classify/certificate.hpp"
#include "summa/classify/classify.hpp"
#include "summa/continuation/evaluator.hpp"
#include "summa/continuation/growth.hpp"
#include "summa/error.hpp"
#include "summa/json_util.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/descriptor_json.hpp"

using namespace summa;
using namespace summa::classify;
using summa::seq::SequenceDescriptor;
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

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

std::vector<Rule> leaves(const RuleNode& n) {
  if (n.children.empty()) return {n.rule};
  std::vector<Rule> out;
  for (const auto& c : n.children) {
    auto sub = leaves(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

SequenceDescriptor one_plus_inv_factorial() {
  seq::Tail t;
  t.kind = seq::Tail::Kind::factorial;
  return seq::perturbed(seq::one(), t);
}

// verdicts of the growth-scan evidence entries, keyed by target
std::vector<std::string> scan_verdicts(const PreservationCertificate& c, const std::string& target) {
  std::vector<std::string> out;
  for (const auto& e : c.evidence)
    if (e.value("kind", "") == "growth_scan" && e.value("target", "") == target)
      for (const auto& ray : e["report"]["rays"]) out.push_back(ray.value("verdict", ""));
  return out;
}

}  // namespace

TEST(Names, RoundTrip) {
  for (auto v : {Verdict::preserves, Verdict::not_preserves, Verdict::inconclusive})
    EXPECT_EQ(parse_verdict(verdict_name(v)), v);
  for (int i = 0; i <= static_cast<int>(Rule::no_rule); ++i) {
    auto r = static_cast<Rule>(i);
    EXPECT_EQ(parse_rule(rule_name(r)), r) << rule_name(r);
  }
  for (auto b : {Basis::theorem, Basis::evidence}) EXPECT_EQ(parse_basis(basis_name(b)), b);
  EXPECT_EQ(code_of([] { parse_rule("made_up"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_verdict("maybe"); }), ErrorCode::ParseError);
  EXPECT_TRUE(is_base_rule(Rule::power_sum));
  EXPECT_FALSE(is_base_rule(Rule::group_product));
  EXPECT_FALSE(is_base_rule(Rule::numerical_only));
}

TEST(Structural, ExpPolynomialSquareTimesPower) {
  auto d = seq::exp_polynomial({{poly({4, 4, 1}), Number(3)}});
  auto c = classify_structural(d);
  EXPECT_EQ(c.verdict, Verdict::preserves);
  EXPECT_EQ(c.basis, Basis::theorem);
  EXPECT_EQ(c.route.rule, Rule::exp_polynomial);
  EXPECT_FALSE(c.q_flag);
  EXPECT_FALSE(check_certificate(c).has_value());
}

TEST(Structural, GroupProductOverBaseLeaves) {
  auto d = seq::product(seq::q_factorial(Number(Rational(1, 2))), seq::geometric(Number(3)));
  auto c = classify_structural(d);
  EXPECT_EQ(c.verdict, Verdict::preserves);
  EXPECT_EQ(c.route.rule, Rule::group_product);
  ASSERT_EQ(c.route.children.size(), 2u);
  std::multiset<Rule> got;
  for (const auto& k : c.route.children) got.insert(k.rule);
  EXPECT_EQ(got, (std::multiset<Rule>{Rule::q_factorial, Rule::geometric}));
  for (Rule r : leaves(c.route)) EXPECT_TRUE(is_base_rule(r)) << rule_name(r);
}

TEST(Structural, SumHasNoRule) {
  auto c = classify_structural(seq::sum(seq::geometric(Number(1)), seq::geometric(Number(2))));
  EXPECT_EQ(c.verdict, Verdict::inconclusive);
  EXPECT_EQ(c.route.rule, Rule::no_rule);
}

TEST(Structural, BaseRulesPerKind) {
  EXPECT_EQ(classify_structural(seq::polynomial(poly({1, 1}))).route.rule, Rule::polynomial);
  EXPECT_EQ(classify_structural(seq::rational(poly({1, 1}), poly({1, 0, 1}))).route.rule, Rule::rational_corollary);
  EXPECT_EQ(classify_structural(seq::power_sum({Number(3), Number(1)})).route.rule, Rule::power_sum);
  EXPECT_EQ(classify_structural(seq::gamma_ratio({2.0}, {1.0, 1.0})).route.rule, Rule::gamma_ratio_moment);
  auto inv = classify_structural(seq::inverse(seq::power_sum({Number(3), Number(1)})));
  EXPECT_EQ(inv.route.rule, Rule::group_inverse);
  EXPECT_EQ(inv.verdict, Verdict::preserves);
}

TEST(Numerical, ParityFindsThePole) {
  auto c = classify_numerical(seq::periodic({Number(1), Number(Rational(1, 2))}));
  EXPECT_EQ(c.verdict, Verdict::not_preserves);
  EXPECT_EQ(c.basis, Basis::evidence);
  EXPECT_EQ(c.route.rule, Rule::numerical_only);
  EXPECT_FALSE(check_certificate(c).has_value());
  // theta = pi is the fourth default ray
  auto fwd = scan_verdicts(c, "forward");
  ASSERT_EQ(fwd.size(), 6u);
  EXPECT_EQ(fwd[3], "singularity_detected");
}

TEST(Numerical, OnePlus2nPreservesOnItsRays) {
  NumericalOptions o;
  o.thetas = {pi / 2, pi, 3 * pi / 2};
  o.ks = {0.5, 1.0, 2.0};
  auto c = classify_numerical(seq::power_sum({Number(2), Number(1)}), o);
  EXPECT_EQ(c.verdict, Verdict::preserves);
  EXPECT_EQ(c.basis, Basis::evidence);
  for (const char* t : {"forward", "inverse"}) {
    auto v = scan_verdicts(c, t);
    ASSERT_EQ(v.size(), 3u) << t;
    for (const auto& s : v) EXPECT_EQ(s, "less_than_exponential") << t;
  }
  EXPECT_EQ(c.scans.size(), 2u);
}

TEST(Numerical, OnePlusInverseFactorialIsExponential) {
  NumericalOptions o;
  o.thetas = {pi / 4};
  o.ks = {1.0};
  auto c = classify_numerical(one_plus_inv_factorial(), o);
  EXPECT_EQ(c.verdict, Verdict::not_preserves);
  auto fwd = scan_verdicts(c, "forward");
  ASSERT_EQ(fwd.size(), 1u);
  EXPECT_EQ(fwd[0], "exponential_order_k");
}

TEST(Numerical, UnavailableEvaluatorIsInconclusive) {
  // Gamma(1+2n)/Gamma(1+n)^2 only has its disc
  auto c = classify_numerical(seq::gamma_ratio({2.0}, {1.0, 1.0}));
  EXPECT_EQ(c.verdict, Verdict::inconclusive);
  EXPECT_EQ(c.basis, Basis::evidence);
}

TEST(Perturbation, WitnessAtQ2) {
  auto w = strict_inclusion_witness(2.0);
  auto s = perturbation_route(w.m, seq::one());
  EXPECT_EQ(s.verdict, Verdict::preserves);
  EXPECT_EQ(s.route.rule, Rule::perturbation_close);
  auto q = perturbation_route(w.m, seq::one(), 2.0, w.window);
  EXPECT_EQ(q.verdict, Verdict::not_preserves);
  EXPECT_EQ(q.route.rule, Rule::q_perturbation_negative);
  EXPECT_TRUE(q.q_flag);
  EXPECT_DOUBLE_EQ(q.q, 2.0);
  EXPECT_FALSE(check_certificate(q).has_value());
}

TEST(Perturbation, IdenticalSequencesPreserve) {
  auto m = seq::power_sum({Number(2), Number(1)});
  auto c = perturbation_route(m, m);
  EXPECT_EQ(c.verdict, Verdict::preserves);
}

TEST(Perturbation, OnePlusInverseFactorialFailsNegativeCriterion) {
  auto c = perturbation_route(one_plus_inv_factorial(), seq::one());
  EXPECT_EQ(c.verdict, Verdict::not_preserves);
  EXPECT_EQ(c.route.rule, Rule::perturbation_negative);
  EXPECT_FALSE(check_certificate(c).has_value());
}

TEST(Witness, DualCertificates) {
  for (double q : {2.0, 10.0}) {
    auto w = strict_inclusion_witness(q);
    EXPECT_EQ(w.summability.verdict, Verdict::preserves) << q;
    EXPECT_FALSE(w.summability.q_flag);
    EXPECT_EQ(w.q_gevrey.verdict, Verdict::not_preserves) << q;
    EXPECT_TRUE(w.q_gevrey.q_flag);
    EXPECT_NEAR(w.sigma_hat, -1.0, 0.1) << q;
    // m(n) = 1 + n q^(-n(n-1)/2)
    for (std::size_t n : {1u, 2u, 3u, 5u}) {
      double expect = 1.0 + n * std::pow(q, -0.5 * n * (n - 1.0));
      EXPECT_NEAR(seq::seq_eval(w.m, n), expect, 1e-14 * expect);
    }
  }
}

TEST(Witness, QGuard) {
  EXPECT_NO_THROW(strict_inclusion_witness(1.01));
  EXPECT_EQ(code_of([] { strict_inclusion_witness(1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { strict_inclusion_witness(0.5); }), ErrorCode::InvalidArgument);
}

TEST(Certificate, JsonRoundTrip) {
  for (const auto& e : builtin_corpus()) {
    auto c = classify_descriptor(e.descriptor);
    Json j = to_json(c);
    auto back = certificate_from_json(j);
    EXPECT_EQ(canonical_dump(to_json(back)), canonical_dump(j)) << e.name;
    EXPECT_EQ(back.verdict, c.verdict);
    EXPECT_EQ(back.route.rule, c.route.rule);
    EXPECT_EQ(back.basis, c.basis);
  }
  EXPECT_EQ(code_of([] { certificate_from_json(Json{{"verdict", "yes"}}); }), ErrorCode::ParseError);
}

TEST(Certificate, InvariantViolationsAreReported) {
  auto c = classify_structural(seq::power_sum({Number(2), Number(1)}));
  ASSERT_FALSE(check_certificate(c).has_value());

  auto bad_leaf = c;
  bad_leaf.route = RuleNode{Rule::group_product, Verdict::preserves, Basis::theorem, "", {RuleNode{}}};
  EXPECT_TRUE(check_certificate(bad_leaf).has_value());

  auto mismatch = c;
  mismatch.verdict = Verdict::inconclusive;
  EXPECT_TRUE(check_certificate(mismatch).has_value());

  PreservationCertificate bare;
  bare.verdict = Verdict::not_preserves;
  bare.route.verdict = Verdict::not_preserves;
  bare.route.rule = Rule::numerical_only;
  EXPECT_TRUE(check_certificate(bare).has_value());
}

TEST(Combined, StructuralFirstWithEvidence) {
  auto c = classify_descriptor(seq::power_sum({Number(2), Number(1)}));
  EXPECT_EQ(c.verdict, Verdict::preserves);
  EXPECT_EQ(c.basis, Basis::theorem);
  EXPECT_FALSE(c.evidence.empty());
  // no structural rule: the numerical verdict stands, labeled as evidence
  auto p = classify_descriptor(seq::periodic({Number(1), Number(Rational(1, 2))}));
  EXPECT_EQ(p.verdict, Verdict::not_preserves);
  EXPECT_EQ(p.basis, Basis::evidence);
}

// --- corpus properties ---------------------------------------------------------

TEST(ClassifyProperty, CorpusVerdictsWithoutConflicts) {
  auto corpus = builtin_corpus();
  EXPECT_GE(corpus.size(), 20u);
  for (const auto& e : corpus) {
    auto s = classify_structural(e.descriptor);
    auto n = classify_numerical(e.descriptor);
    if (s.verdict == Verdict::preserves) {
      EXPECT_NE(n.verdict, Verdict::not_preserves) << e.name;
    }
    PreservationCertificate c;
    ASSERT_NO_THROW(c = classify_descriptor(e.descriptor)) << e.name;
    EXPECT_EQ(c.verdict, e.expected) << e.name;
    EXPECT_FALSE(check_certificate(c).has_value()) << e.name << ": " << check_certificate(c).value_or("");
  }
}

TEST(ClassifyProperty, GroupClosure) {
  std::vector<SequenceDescriptor> pool;
  for (const auto& e : builtin_corpus()) {
    if (e.expected != Verdict::preserves) continue;
    auto s = classify_structural(e.descriptor);
    if (s.verdict == Verdict::preserves && s.route.rule != Rule::perturbation_close) pool.push_back(e.descriptor);
  }
  ASSERT_GE(pool.size(), 8u);
  summa::testing::Gen g(401);
  int concurring = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const auto& a = pool[static_cast<std::size_t>(g.integer(0, static_cast<int>(pool.size()) - 1))];
    const auto& b = pool[static_cast<std::size_t>(g.integer(0, static_cast<int>(pool.size()) - 1))];
    for (const auto& d : {seq::product(a, b), seq::inverse(a)}) {
      auto s = classify_structural(d);
      EXPECT_EQ(s.verdict, Verdict::preserves) << seq::canonical_string(d);
      EXPECT_TRUE(s.route.rule == Rule::group_product || s.route.rule == Rule::group_inverse);
      for (Rule r : leaves(s.route)) EXPECT_TRUE(is_base_rule(r)) << rule_name(r);
      auto n = classify_numerical(d);
      EXPECT_NE(n.verdict, Verdict::not_preserves) << seq::canonical_string(d);
      if (n.verdict == Verdict::preserves) ++concurring;
    }
  }
  // scans reach a verdict whenever both evaluators continue past their discs
  EXPECT_GT(concurring, 0);
}

TEST(ClassifyProperty, NegativeCompleteness) {
  // 1 + 1/n!: growth scans and the negative perturbation criterion agree
  auto m = one_plus_inv_factorial();
  auto n = classify_numerical(m);
  auto p = perturbation_route(m, seq::one());
  EXPECT_EQ(n.verdict, Verdict::not_preserves);
  EXPECT_EQ(p.verdict, Verdict::not_preserves);

  // parity: forward and inverse series each hit the pole at -1 on their own
  auto parity = seq::periodic({Number(1), Number(Rational(1, 2))});
  for (auto t : {cont::Target::forward, cont::Target::inverse}) {
    auto ev = cont::ContinuationEvaluator::create(parity, t);
    auto rep = cont::growth_scan(ev, {cont::Ray::log_spaced(pi, 0.1, 1e3, 61)});
    EXPECT_EQ(rep.rays[0].verdict, cont::Verdict::singularity_detected) << cont::target_name(t);
    ASSERT_TRUE(rep.rays[0].singular_radius.has_value());
    EXPECT_NEAR(*rep.rays[0].singular_radius, 1.0, 0.1);
  }
  EXPECT_EQ(classify_numerical(parity).verdict, Verdict::not_preserves);
}

TEST(ClassifyProperty, QModeOnCorpus) {
  // structural q-rules never contradict the q-scan
  for (const auto& e : builtin_corpus()) {
    auto s = classify_structural(e.descriptor, 2.0);
    EXPECT_TRUE(s.q_flag) << e.name;
    EXPECT_FALSE(check_certificate(s).has_value()) << e.name;
  }
}
