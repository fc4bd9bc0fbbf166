#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "summa/seqcore/descriptor.hpp"
#include "summa/seqcore/series.hpp"

namespace summa::seq {

inline constexpr double kTolOrder = 0.05;
inline const std::vector<double> kDefaultProbeKs{0.5, 1.0, 2.0, 4.0};

struct Window {
  std::size_t lo = 16;
  std::size_t hi = 256;
};

// Evidence that ln|a_n| <= -(1/k) ln n! + K_B n + K_A on the window.
struct ProbeFit {
  double k = 0.0;
  bool holds = false;
  double excess = 0.0;  // fitted ln n! coefficient after adding (1/k) ln n!
  double K_A = 0.0;
  double K_B = 0.0;
};

struct GevreyEstimate {
  double s_hat = 0.0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  double fit_residual = 0.0;  // rms per point
  double log_B = 0.0;
  double log_C = 0.0;
  std::map<double, bool> is_minus_infinity_evidence;
  std::vector<ProbeFit> probes;

  bool order_zero(double tol = kTolOrder) const;
  // Holds on every probe.
  bool minus_infinity() const;
};

// Fits ln m(n) = s ln n! + n ln c + const.
GevreyEstimate estimate_order(const SequenceDescriptor& m, Window w = {});

GevreyEstimate gevrey_order_estimate(const TruncatedSeries& coeffs, Window w = {},
                                     const std::vector<double>& ks = kDefaultProbeKs);
// Same fit from ln|a_n| (index = n); -inf marks a zero coefficient.
GevreyEstimate gevrey_order_estimate_log(std::span<const double> log_abs, Window w = {},
                                         const std::vector<double>& ks = kDefaultProbeKs);

struct QModeParams {
  double q = 2.0;
  std::vector<double> s_probes{0.5, 1.0, 2.0, 4.0};
};

// Evidence that ln|r(n)| <= -s n(n-1)/2 ln q + alpha ln n! + n ln B + ln A.
struct QProbe {
  double s = 0.0;
  bool holds = false;
  double log_A = 0.0;
  double log_B = 0.0;
  double alpha = 0.0;
};

struct QEvidence {
  double q = 2.0;
  double sigma_hat = 0.0;  // fitted coefficient of n(n-1)/2 ln q
  std::vector<QProbe> probes;
  bool minus_infinity() const;
};

struct PerturbationEvidence {
  bool identical = false;
  Window window;
  std::optional<GevreyEstimate> gevrey;
  std::vector<ProbeFit> probes;
  std::optional<QEvidence> q;

  bool all_pass() const;
  bool any_pass() const;
};

// ln|m(n) - m~(n)| and its sign, using the perturbation tail when one
// descriptor is a perturbation of the other.
std::pair<double, int> residual_log(const SequenceDescriptor& m, const SequenceDescriptor& m_tilde, std::size_t n);

PerturbationEvidence perturbation_check(const SequenceDescriptor& m, const SequenceDescriptor& m_tilde,
                                        const std::vector<double>& ks = kDefaultProbeKs, Window w = {},
                                        const std::optional<QModeParams>& q_mode = std::nullopt);

}  // namespace summa::seq
