#include "summa/classify/certificate.hpp"

#include <array>
#include <cmath>

#include "summa/error.hpp"

namespace summa::classify {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 16> kRules{{
    {Rule::geometric, "geometric"},
    {Rule::polynomial, "polynomial"},
    {Rule::rational_corollary, "rational_corollary"},
    {Rule::power_sum, "power_sum"},
    {Rule::exp_polynomial, "exp_polynomial"},
    {Rule::q_factorial, "q_factorial"},
    {Rule::gamma_ratio_moment, "gamma_ratio_moment"},
    {Rule::group_product, "group_product"},
    {Rule::group_inverse, "group_inverse"},
    {Rule::perturbation_close, "perturbation_close"},
    {Rule::perturbation_negative, "perturbation_negative"},
    {Rule::q_perturbation_close, "q_perturbation_close"},
    {Rule::q_perturbation_negative, "q_perturbation_negative"},
    {Rule::summability_inclusion, "summability_inclusion"},
    {Rule::numerical_only, "numerical_only"},
    {Rule::no_rule, "no_rule"},
}};

// JSON numbers that may be infinite
Json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

bool leaves_are_base(const RuleNode& n) {
  if (n.children.empty()) return is_base_rule(n.rule);
  for (const auto& c : n.children)
    if (!leaves_are_base(c)) return false;
  return n.rule == Rule::group_product || n.rule == Rule::group_inverse;
}

bool has_rule(const RuleNode& n, Rule r) {
  if (n.rule == r) return true;
  for (const auto& c : n.children)
    if (has_rule(c, r)) return true;
  return false;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::preserves: return "preserves";
    case Verdict::not_preserves: return "not_preserves";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict parse_verdict(std::string_view s) {
  for (auto v : {Verdict::preserves, Verdict::not_preserves, Verdict::inconclusive})
    if (verdict_name(v) == s) return v;
  fail(ErrorCode::ParseError, "unknown verdict '" + std::string(s) + "'");
}

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRules)
    if (rule == r) return name;
  return "no_rule";
}

Rule parse_rule(std::string_view s) {
  for (const auto& [rule, name] : kRules)
    if (name == s) return rule;
  fail(ErrorCode::ParseError, "unknown rule '" + std::string(s) + "'");
}

std::string_view basis_name(Basis b) { return b == Basis::theorem ? "theorem" : "evidence"; }

Basis parse_basis(std::string_view s) {
  if (s == "theorem") return Basis::theorem;
  if (s == "evidence") return Basis::evidence;
  fail(ErrorCode::ParseError, "unknown basis '" + std::string(s) + "'");
}

bool is_base_rule(Rule r) {
  switch (r) {
    case Rule::geometric:
    case Rule::polynomial:
    case Rule::rational_corollary:
    case Rule::power_sum:
    case Rule::exp_polynomial:
    case Rule::q_factorial:
    case Rule::gamma_ratio_moment:
      return true;
    default:
      return false;
  }
}

Json to_json(const RuleNode& n) {
  Json j;
  j["rule"] = std::string(rule_name(n.rule));
  j["verdict"] = std::string(verdict_name(n.verdict));
  j["basis"] = std::string(basis_name(n.basis));
  j["note"] = n.note;
  Json children = Json::array();
  for (const auto& c : n.children) children.push_back(to_json(c));
  j["children"] = children;
  return j;
}

RuleNode rule_node_from_json(const Json& j) {
  try {
    RuleNode n;
    n.rule = parse_rule(j.at("rule").get<std::string>());
    n.verdict = parse_verdict(j.at("verdict").get<std::string>());
    n.basis = parse_basis(j.at("basis").get<std::string>());
    n.note = j.value("note", "");
    for (const auto& c : j.value("children", Json::array())) n.children.push_back(rule_node_from_json(c));
    return n;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed rule node: ") + e.what());
  }
}

Json to_json(const PreservationCertificate& c) {
  Json j;
  j["verdict"] = std::string(verdict_name(c.verdict));
  j["basis"] = std::string(basis_name(c.basis));
  j["q_flag"] = c.q_flag;
  if (c.q_flag) j["q"] = c.q;
  j["descriptor"] = c.descriptor;
  j["route"] = to_json(c.route);
  j["evidence"] = c.evidence;
  return j;
}

PreservationCertificate certificate_from_json(const Json& j) {
  try {
    PreservationCertificate c;
    c.verdict = parse_verdict(j.at("verdict").get<std::string>());
    c.basis = parse_basis(j.at("basis").get<std::string>());
    c.q_flag = j.at("q_flag").get<bool>();
    if (c.q_flag) c.q = j.at("q").get<double>();
    c.descriptor = j.at("descriptor");
    c.route = rule_node_from_json(j.at("route"));
    c.evidence = j.value("evidence", Json::array());
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed certificate: ") + e.what());
  }
}

Json perturbation_evidence_to_json(const seq::PerturbationEvidence& e) {
  Json j;
  j["kind"] = "perturbation";
  j["identical"] = e.identical;
  j["window"] = {e.window.lo, e.window.hi};
  if (e.gevrey) {
    j["s_hat"] = finite_or_string(e.gevrey->s_hat);
    j["fit_residual"] = finite_or_string(e.gevrey->fit_residual);
  }
  Json probes = Json::array();
  for (const auto& p : e.probes)
    probes.push_back({{"k", p.k},
                      {"holds", p.holds},
                      {"excess", finite_or_string(p.excess)},
                      {"K_A", finite_or_string(p.K_A)},
                      {"K_B", finite_or_string(p.K_B)}});
  j["probes"] = probes;
  if (e.q) {
    Json q;
    q["q"] = e.q->q;
    q["sigma_hat"] = finite_or_string(e.q->sigma_hat);
    Json qp = Json::array();
    for (const auto& p : e.q->probes)
      qp.push_back({{"s", p.s},
                    {"holds", p.holds},
                    {"log_A", finite_or_string(p.log_A)},
                    {"log_B", finite_or_string(p.log_B)},
                    {"alpha", finite_or_string(p.alpha)}});
    q["probes"] = qp;
    j["q_evidence"] = q;
  }
  return j;
}

std::optional<std::string> check_certificate(const PreservationCertificate& c) {
  if (c.verdict != c.route.verdict) return "certificate verdict differs from its route";
  if (c.verdict == Verdict::preserves && c.basis == Basis::theorem && !leaves_are_base(c.route))
    return "theorem-backed preserves verdict has a non-base leaf";
  if (c.verdict == Verdict::not_preserves) {
    bool ok = has_rule(c.route, Rule::perturbation_negative) || has_rule(c.route, Rule::q_perturbation_negative);
    for (const auto& e : c.evidence) {
      if (e.value("kind", "") != "growth_scan" || !e.contains("report")) continue;
      for (const auto& ray : e["report"].value("rays", Json::array())) {
        auto v = ray.value("verdict", "");
        if (v == "singularity_detected" || v == "exponential_order_k") ok = true;
        if (c.q_flag && ray.contains("q_fit") && !ray["q_fit"].value("holds", true)) ok = true;
      }
    }
    if (!ok) return "not_preserves verdict carries neither negative-criterion evidence nor a failing scan";
  }
  return std::nullopt;
}

}  // namespace summa::classify
