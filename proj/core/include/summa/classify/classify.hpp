#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "summa/classify/certificate.hpp"
#include "summa/continuation/evaluator.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/gevrey.hpp"

namespace summa::classify {

struct NumericalOptions {
  std::vector<double> thetas{std::numbers::pi / 4, std::numbers::pi / 2, 3 * std::numbers::pi / 4,
                              std::numbers::pi,     5 * std::numbers::pi / 4, 3 * std::numbers::pi / 2};
  std::vector<double> ks{0.5, 1.0, 2.0, 4.0};
  double r_min = 0.1;
  double r_max = 1e3;
  std::size_t points = 61;
  cont::EvaluatorOptions eval;
  unsigned threads = 0;
  // q-Gevrey mode: scans also fit q-exponential growth of order 1/q_s.
  std::optional<double> q;
  double q_s = 4.0;
};

// Pattern match on the descriptor tree. With q set, the rules concern
// q-Gevrey preservation for that q.
PreservationCertificate classify_structural(const seq::SequenceDescriptor& d, std::optional<double> q = std::nullopt);

// Growth scans of the forward and inverse generating functions.
PreservationCertificate classify_numerical(const seq::SequenceDescriptor& d, const NumericalOptions& opts = {});

// Closeness of m to m~ (which should preserve) through the residual r = m - m~.
PreservationCertificate perturbation_route(const seq::SequenceDescriptor& m, const seq::SequenceDescriptor& m_tilde,
                                           std::optional<double> q = std::nullopt,
                                           std::optional<seq::Window> window = std::nullopt,
                                           const std::vector<double>& ks = seq::kDefaultProbeKs);

// Structural route first, numerical evidence attached. A theorem-backed
// preserves verdict against a numerical not_preserves throws ClassificationConflict.
PreservationCertificate classify_descriptor(const seq::SequenceDescriptor& d, const NumericalOptions& opts = {});

struct WitnessBundle {
  seq::SequenceDescriptor m;
  PreservationCertificate summability;
  PreservationCertificate q_gevrey;
  double sigma_hat = 0.0;  // fitted q-Gevrey order of r(n)
  seq::Window window;
};

// m(n) = 1 + n q^(-n(n-1)/2): preserves summability but not q-Gevrey expansions.
WitnessBundle strict_inclusion_witness(double q);
seq::Window witness_window(double q);

struct CorpusEntry {
  std::string name;
  seq::SequenceDescriptor descriptor;
  Verdict expected;
};

std::vector<CorpusEntry> builtin_corpus();

}  // namespace summa::classify
