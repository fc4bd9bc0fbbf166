#include "summa/classify/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "summa/continuation/growth.hpp"
#include "summa/error.hpp"
#include "summa/seqcore/descriptor_json.hpp"
#include "summa/specfun/partial_fractions.hpp"

namespace summa::classify {

using seq::Kind;
using seq::SequenceDescriptor;

namespace {

RuleNode leaf(Rule r, Verdict v, Basis b, std::string note = {}) { return RuleNode{r, v, b, std::move(note), {}}; }

Basis weaker(Basis a, Basis b) { return a == Basis::theorem && b == Basis::theorem ? Basis::theorem : Basis::evidence; }

bool vanishes_on_naturals(const Polynomial& w) {
  for (const auto& r : specfun::factor_polynomial(w).roots) {
    double k = std::round(r.value.real());
    if (k >= 0.0 && std::abs(r.value - Complex(k, 0.0)) < specfun::kRootClusterTol) return true;
  }
  return false;
}

RuleNode structural_node(const SequenceDescriptor& d, std::optional<double> q, Json& evidence);

RuleNode perturbation_node(const SequenceDescriptor& m, const SequenceDescriptor& m_tilde, std::optional<double> q,
                           seq::Window window, const std::vector<double>& ks, Json& evidence) {
  RuleNode ref = structural_node(m_tilde, q, evidence);
  const Rule close = q ? Rule::q_perturbation_close : Rule::perturbation_close;
  const Rule negative = q ? Rule::q_perturbation_negative : Rule::perturbation_negative;

  std::optional<seq::QModeParams> qp;
  if (q) qp = seq::QModeParams{*q, {0.5, 1.0, 2.0, 4.0}};
  auto ev = seq::perturbation_check(m, m_tilde, ks, window, qp);
  Json ej = perturbation_evidence_to_json(ev);
  ej["reference"] = seq::to_json(m_tilde);
  evidence.push_back(ej);

  // a tail with finite support lies in every negative Gevrey class exactly
  bool finite_support = m.kind() == Kind::perturbed && seq::same_descriptor(m.as<seq::PerturbedSeq>().base, m_tilde) &&
                        m.as<seq::PerturbedSeq>().tail.kind == seq::Tail::Kind::values;
  const Basis close_basis = (ev.identical && (finite_support || seq::same_descriptor(m, m_tilde)))
                                ? ref.basis
                                : Basis::evidence;

  RuleNode node;
  node.children.push_back(ref);
  if (ref.verdict != Verdict::preserves) {
    node.rule = close;
    node.verdict = Verdict::inconclusive;
    node.basis = Basis::evidence;
    node.note = "reference sequence is not known to preserve";
    return node;
  }

  const bool passes = q ? (ev.identical || (ev.q && ev.q->minus_infinity())) : (ev.identical || ev.all_pass());
  if (passes) {
    node.rule = close;
    node.verdict = Verdict::preserves;
    node.basis = close_basis;
    node.note = ev.identical ? "residual vanishes on the window" : "residual passes every -inf probe on the window";
    return node;
  }

  char buf[160];
  if (q) {
    double sigma = ev.q ? ev.q->sigma_hat : 0.0;
    if (std::isfinite(sigma) && sigma < -seq::kTolOrder) {
      std::snprintf(buf, sizeof buf, "residual has q-Gevrey order %.4g, not -inf", sigma);
      return RuleNode{negative, Verdict::not_preserves, Basis::evidence, buf, {ref}};
    }
  } else if (ev.gevrey) {
    double s = ev.gevrey->s_hat;
    if (std::isfinite(s) && s < -seq::kTolOrder) {
      std::snprintf(buf, sizeof buf, "residual has Gevrey order %.4g, not -inf", s);
      return RuleNode{negative, Verdict::not_preserves, Basis::evidence, buf, {ref}};
    }
  }
  if (q) {
    // q-Gevrey preservation implies summability preservation
    Json scratch = Json::array();
    RuleNode plain = perturbation_node(m, m_tilde, std::nullopt, window, ks, scratch);
    if (plain.verdict == Verdict::not_preserves) {
      for (auto& e : scratch) evidence.push_back(e);
      return RuleNode{Rule::summability_inclusion, Verdict::not_preserves, plain.basis,
                      "does not preserve summability", {plain}};
    }
  }
  node.rule = close;
  node.verdict = Verdict::inconclusive;
  node.basis = Basis::evidence;
  node.note = "residual is neither -inf nor of a finite negative order on the window";
  return node;
}

RuleNode group_node(Rule rule, std::vector<RuleNode> kids) {
  RuleNode n;
  n.rule = rule;
  n.basis = Basis::theorem;
  for (const auto& k : kids) n.basis = weaker(n.basis, k.basis);
  bool all_pos = std::all_of(kids.begin(), kids.end(), [](const RuleNode& k) { return k.verdict == Verdict::preserves; });
  long neg = std::count_if(kids.begin(), kids.end(), [](const RuleNode& k) { return k.verdict == Verdict::not_preserves; });
  long pos = std::count_if(kids.begin(), kids.end(), [](const RuleNode& k) { return k.verdict == Verdict::preserves; });
  if (all_pos) {
    n.verdict = Verdict::preserves;
  } else if (neg == 1 && pos + neg == static_cast<long>(kids.size())) {
    // preserving sequences form a group: a preserving factor cannot repair a non-preserving one
    n.verdict = Verdict::not_preserves;
  } else {
    n.verdict = Verdict::inconclusive;
    n.basis = Basis::evidence;
  }
  n.children = std::move(kids);
  return n;
}

RuleNode structural_summability(const SequenceDescriptor& d, Json& evidence) {
  switch (d.kind()) {
    case Kind::geometric: return leaf(Rule::geometric, Verdict::preserves, Basis::theorem);
    case Kind::polynomial: return leaf(Rule::polynomial, Verdict::preserves, Basis::theorem);
    case Kind::rational: return leaf(Rule::rational_corollary, Verdict::preserves, Basis::theorem);
    case Kind::power_sum: return leaf(Rule::power_sum, Verdict::preserves, Basis::theorem);
    case Kind::exp_poly: {
      const auto& t = d.as<seq::ExpPolynomial>().terms;
      if (vanishes_on_naturals(t.back().w))
        return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence, "leading weight vanishes on N0");
      return leaf(Rule::exp_polynomial, Verdict::preserves, Basis::theorem);
    }
    case Kind::q_factorial: return leaf(Rule::q_factorial, Verdict::preserves, Basis::theorem);
    case Kind::gamma_ratio:
      if (!d.as<seq::GammaRatio>().balanced)
        return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence, "unbalanced gamma ratio");
      return leaf(Rule::gamma_ratio_moment, Verdict::preserves, Basis::theorem);
    case Kind::periodic:
      return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence, "no structural rule for periodic sequences");
    case Kind::q_gaussian:
      return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence, "q-Gaussian sequences are not of order zero");
    case Kind::sum:
      return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence, "closure under addition is an open question");
    case Kind::product: {
      const auto& p = d.as<seq::ProductSeq>();
      return group_node(Rule::group_product,
                        {structural_node(p.left, std::nullopt, evidence), structural_node(p.right, std::nullopt, evidence)});
    }
    case Kind::inverse:
      return group_node(Rule::group_inverse, {structural_node(d.as<seq::InverseSeq>().inner, std::nullopt, evidence)});
    case Kind::perturbed:
      return perturbation_node(d, d.as<seq::PerturbedSeq>().base, std::nullopt, seq::Window{}, seq::kDefaultProbeKs,
                               evidence);
  }
  return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence);
}

RuleNode structural_q(const SequenceDescriptor& d, double q, Json& evidence) {
  switch (d.kind()) {
    case Kind::geometric: return leaf(Rule::geometric, Verdict::preserves, Basis::theorem);
    case Kind::gamma_ratio: {
      const auto& g = d.as<seq::GammaRatio>();
      if (g.a.size() == 1 && g.b.size() == 2 && g.a[0] == 2.0 && g.b[0] == 1.0 && g.b[1] == 1.0)
        return leaf(Rule::gamma_ratio_moment, Verdict::preserves, Basis::theorem, "central binomial coefficients");
      break;
    }
    case Kind::q_factorial:
      if (std::abs(d.as<seq::QFactorial>().q.real() - 1.0 / q) <= 1e-12)
        return leaf(Rule::q_factorial, Verdict::preserves, Basis::theorem, "[n]_{1/q}!");
      break;
    case Kind::product: {
      const auto& p = d.as<seq::ProductSeq>();
      return group_node(Rule::group_product, {structural_node(p.left, q, evidence), structural_node(p.right, q, evidence)});
    }
    case Kind::inverse:
      return group_node(Rule::group_inverse, {structural_node(d.as<seq::InverseSeq>().inner, q, evidence)});
    case Kind::perturbed:
      return perturbation_node(d, d.as<seq::PerturbedSeq>().base, q, witness_window(q), seq::kDefaultProbeKs, evidence);
    default:
      break;
  }
  RuleNode plain = structural_summability(d, evidence);
  if (plain.verdict == Verdict::not_preserves)
    return RuleNode{Rule::summability_inclusion, Verdict::not_preserves, plain.basis, "does not preserve summability",
                    {plain}};
  return leaf(Rule::no_rule, Verdict::inconclusive, Basis::evidence, "no q-Gevrey rule for this descriptor");
}

RuleNode structural_node(const SequenceDescriptor& d, std::optional<double> q, Json& evidence) {
  return q ? structural_q(d, *q, evidence) : structural_summability(d, evidence);
}

void check_q(std::optional<double> q) {
  if (q && !(*q > 1.0)) fail(ErrorCode::InvalidArgument, "q-Gevrey mode requires q > 1");
}

PreservationCertificate make_certificate(const SequenceDescriptor& d, std::optional<double> q, RuleNode route,
                                         Json evidence) {
  PreservationCertificate c;
  c.verdict = route.verdict;
  c.basis = route.basis;
  c.q_flag = q.has_value();
  c.q = q.value_or(0.0);
  c.descriptor = seq::to_json(d);
  c.route = std::move(route);
  c.evidence = std::move(evidence);
  return c;
}

}  // namespace

seq::Window witness_window(double q) {
  if (!(q > 1.0)) fail(ErrorCode::InvalidArgument, "witness requires q > 1");
  double hi = std::ceil(40.0 / std::log(q));
  return seq::Window{16, static_cast<std::size_t>(std::clamp(hi, 256.0, 4096.0))};
}

PreservationCertificate classify_structural(const SequenceDescriptor& d, std::optional<double> q) {
  check_q(q);
  Json evidence = Json::array();
  RuleNode route = structural_node(d, q, evidence);
  return make_certificate(d, q, std::move(route), std::move(evidence));
}

PreservationCertificate perturbation_route(const SequenceDescriptor& m, const SequenceDescriptor& m_tilde,
                                           std::optional<double> q, std::optional<seq::Window> window,
                                           const std::vector<double>& ks) {
  check_q(q);
  seq::Window w = window ? *window : (q ? witness_window(*q) : seq::Window{});
  Json evidence = Json::array();
  RuleNode route = perturbation_node(m, m_tilde, q, w, ks, evidence);
  return make_certificate(m, q, std::move(route), std::move(evidence));
}

PreservationCertificate classify_numerical(const SequenceDescriptor& d, const NumericalOptions& opts) {
  check_q(opts.q);
  std::vector<cont::Ray> rays;
  for (double th : opts.thetas) rays.push_back(cont::Ray::log_spaced(th, opts.r_min, opts.r_max, opts.points));
  cont::ScanOptions so;
  so.ks = opts.ks;
  so.threads = opts.threads;
  if (opts.q) so.q_mode = cont::QMode{*opts.q, opts.q_s, 1.0};

  Json evidence = Json::array();
  std::vector<std::pair<cont::Target, cont::GrowthReport>> scans;
  bool negative = false, positive = true;
  std::string note;
  for (auto target : {cont::Target::forward, cont::Target::inverse}) {
    const std::string tname(cont::target_name(target));
    std::optional<cont::ContinuationEvaluator> ev;
    try {
      ev = cont::ContinuationEvaluator::create(d, target, opts.eval);
    } catch (const Error& e) {
      evidence.push_back({{"kind", "unavailable"}, {"target", tname}, {"error", e.what()}});
      positive = false;
      note += tname + " series unavailable; ";
      continue;
    }
    auto rep = cont::growth_scan(*ev, rays, so);
    evidence.push_back({{"kind", "growth_scan"},
                        {"target", tname},
                        {"strategy", std::string(cont::strategy_name(ev->strategy()))},
                        {"report", rep.to_json()}});
    if (ev->strategy() == cont::Strategy::direct_only) {
      // only the disc of convergence is visible; growth fits there say
      // nothing about the behaviour at infinity
      positive = false;
      note += tname + " series disc-only; ";
      scans.emplace_back(target, std::move(rep));
      continue;
    }
    for (const auto& ray : rep.rays) {
      char buf[128];
      if (ray.verdict == cont::Verdict::singularity_detected || ray.verdict == cont::Verdict::exponential_order_k) {
        negative = true;
        std::snprintf(buf, sizeof buf, "%s series: %s on theta=%.6g; ", tname.c_str(),
                      std::string(cont::verdict_name(ray.verdict)).c_str(), ray.theta);
        note += buf;
      }
      if (ray.verdict != cont::Verdict::less_than_exponential) positive = false;
      if (opts.q) {
        if (!ray.q_fit) {
          positive = false;
        } else if (!ray.q_fit->holds) {
          negative = true;
          std::snprintf(buf, sizeof buf, "%s series: q-growth exceeds order 1/%g on theta=%.6g; ", tname.c_str(),
                        opts.q_s, ray.theta);
          note += buf;
        }
      }
    }
    scans.emplace_back(target, std::move(rep));
  }
  Verdict v = negative ? Verdict::not_preserves : (positive ? Verdict::preserves : Verdict::inconclusive);
  if (note.empty()) note = positive ? "both series grow less than exponentially on every ray" : "scans incomplete";
  auto c = make_certificate(d, opts.q, RuleNode{Rule::numerical_only, v, Basis::evidence, note, {}}, std::move(evidence));
  c.scans = std::move(scans);
  return c;
}

PreservationCertificate classify_descriptor(const SequenceDescriptor& d, const NumericalOptions& opts) {
  auto s = classify_structural(d, opts.q);
  auto n = classify_numerical(d, opts);
  if (s.verdict == Verdict::preserves && n.verdict == Verdict::not_preserves)
    fail(ErrorCode::ClassificationConflict, "structural route says preserves (" + std::string(rule_name(s.route.rule)) +
                                                ") but numerical scans say not_preserves: " + n.route.note +
                                                " descriptor=" + seq::canonical_string(d));
  PreservationCertificate out = s;
  for (auto& e : n.evidence) out.evidence.push_back(e);
  out.scans = std::move(n.scans);
  if (s.verdict == Verdict::inconclusive) {
    out.verdict = n.verdict;
    out.basis = Basis::evidence;
    RuleNode route = n.route;
    route.children.push_back(s.route);
    out.route = std::move(route);
  } else if (n.verdict != Verdict::inconclusive && n.verdict != s.verdict) {
    out.route.note += (out.route.note.empty() ? "" : "; ") + std::string("numerical scans disagree: ") + n.route.note;
  }
  return out;
}

namespace {

SequenceDescriptor witness_sequence(double q) {
  if (!(q > 1.0)) fail(ErrorCode::InvalidArgument, "witness requires q > 1");
  seq::Tail tail;
  tail.kind = seq::Tail::Kind::q_gaussian;
  tail.coeff = 1.0;
  tail.power = 1.0;
  tail.q = q;
  return seq::perturbed(seq::one(), tail);
}

}  // namespace

WitnessBundle strict_inclusion_witness(double q) {
  auto m = witness_sequence(q);
  auto w = witness_window(q);
  WitnessBundle b{m, perturbation_route(m, seq::one(), std::nullopt, w),
                  perturbation_route(m, seq::one(), q, w), 0.0, w};
  auto ev = seq::perturbation_check(m, seq::one(), seq::kDefaultProbeKs, w, seq::QModeParams{q, {0.5, 1.0, 2.0, 4.0}});
  b.sigma_hat = ev.q ? ev.q->sigma_hat : 0.0;
  return b;
}

std::vector<CorpusEntry> builtin_corpus() {
  using P = Polynomial;
  auto R = [](long p, long q = 1) { return Rational(p, q); };
  auto N = [&](long p, long q = 1) { return Number(R(p, q)); };
  auto poly = [&](std::vector<Rational> c) { return P(std::move(c)); };
  seq::Tail fact;
  fact.kind = seq::Tail::Kind::factorial;
  std::vector<CorpusEntry> c;
  c.push_back({"poly_(n+1)^2", seq::polynomial(poly({R(1), R(2), R(1)})), Verdict::preserves});
  c.push_back({"poly_n^2+n+1", seq::polynomial(poly({R(1), R(1), R(1)})), Verdict::preserves});
  c.push_back({"rational_(n+1)/(n^2+1)", seq::rational(poly({R(1), R(1)}), poly({R(1), R(0), R(1)})),
               Verdict::preserves});
  c.push_back({"rational_(n+2)/(2n+2)", seq::rational(poly({R(2), R(1)}), poly({R(2), R(2)})), Verdict::preserves});
  c.push_back({"power_sum_2_1", seq::power_sum({N(2), N(1)}), Verdict::preserves});
  c.push_back({"power_sum_3_2_1", seq::power_sum({N(3), N(2), N(1)}), Verdict::preserves});
  c.push_back({"exp_poly_(n+1)2^n+1",
               seq::exp_polynomial({{poly({R(1)}), N(1)}, {poly({R(1), R(1)}), N(2)}}), Verdict::preserves});
  c.push_back({"exp_poly_(n+2)^2_3^n", seq::exp_polynomial({{poly({R(4), R(4), R(1)}), N(3)}}), Verdict::preserves});
  c.push_back({"q_factorial_0.3", seq::q_factorial(N(3, 10)), Verdict::preserves});
  c.push_back({"q_factorial_0.9", seq::q_factorial(N(9, 10)), Verdict::preserves});
  c.push_back({"central_binomial", seq::gamma_ratio({2.0}, {1.0, 1.0}), Verdict::preserves});
  c.push_back({"inverse_central_binomial", seq::gamma_ratio({1.0, 1.0}, {2.0}), Verdict::preserves});
  c.push_back({"geometric_2", seq::geometric(N(2)), Verdict::preserves});
  c.push_back({"q_factorial_x_geometric",
               seq::product(seq::q_factorial(N(1, 2)), seq::geometric(N(3))), Verdict::preserves});
  c.push_back({"inverse_power_sum", seq::inverse(seq::power_sum({N(2), N(1)})), Verdict::preserves});
  c.push_back({"poly_x_inverse_exp_poly",
               seq::product(seq::polynomial(poly({R(1), R(1)})),
                            seq::inverse(seq::exp_polynomial({{poly({R(1)}), N(1)}, {poly({R(1), R(1)}), N(2)}}))),
               Verdict::preserves});
  c.push_back({"parity", seq::periodic({N(1), N(1, 2)}), Verdict::not_preserves});
  c.push_back({"one_plus_inv_factorial", seq::perturbed(seq::one(), fact), Verdict::not_preserves});
  c.push_back({"witness_q2", witness_sequence(2.0), Verdict::preserves});
  c.push_back({"witness_q10", witness_sequence(10.0), Verdict::preserves});
  c.push_back({"sum_1_2^n", seq::sum(seq::geometric(N(1)), seq::geometric(N(2))), Verdict::inconclusive});
  return c;
}

}  // namespace summa::classify
