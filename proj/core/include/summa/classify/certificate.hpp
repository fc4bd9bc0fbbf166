#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "summa/continuation/growth.hpp"
#include "summa/json_util.hpp"
#include "summa/seqcore/gevrey.hpp"

namespace summa::classify {

enum class Verdict { preserves, not_preserves, inconclusive };

// Rule applied at a certificate node. Base rules close a structural proof.
enum class Rule {
  geometric,
  polynomial,
  rational_corollary,
  power_sum,
  exp_polynomial,
  q_factorial,
  gamma_ratio_moment,
  group_product,
  group_inverse,
  perturbation_close,
  perturbation_negative,
  q_perturbation_close,
  q_perturbation_negative,
  summability_inclusion,
  numerical_only,
  no_rule,
};

// theorem: follows from a proven result; evidence: finite-window numerics.
enum class Basis { theorem, evidence };

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view s);
std::string_view rule_name(Rule r);
Rule parse_rule(std::string_view s);
std::string_view basis_name(Basis b);
Basis parse_basis(std::string_view s);
bool is_base_rule(Rule r);

struct RuleNode {
  Rule rule = Rule::no_rule;
  Verdict verdict = Verdict::inconclusive;
  Basis basis = Basis::theorem;
  std::string note;
  std::vector<RuleNode> children;
};

struct PreservationCertificate {
  Verdict verdict = Verdict::inconclusive;
  Basis basis = Basis::evidence;
  bool q_flag = false;
  double q = 0.0;
  Json descriptor;
  RuleNode route;
  Json evidence = Json::array();
  // Full scans behind the evidence summaries (not serialized).
  std::vector<std::pair<cont::Target, cont::GrowthReport>> scans;
};

Json to_json(const RuleNode& n);
RuleNode rule_node_from_json(const Json& j);
Json to_json(const PreservationCertificate& c);
PreservationCertificate certificate_from_json(const Json& j);

Json perturbation_evidence_to_json(const seq::PerturbationEvidence& e);

// Checks the structural invariants; returns a diagnostic on violation.
std::optional<std::string> check_certificate(const PreservationCertificate& c);

}  // namespace summa::classify
