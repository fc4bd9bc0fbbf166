#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "summa/continuation/evaluator.hpp"
#include "summa/json_util.hpp"

namespace summa::cont {

struct Ray {
  double theta = 0.0;  // normalized to (0, 2 pi)
  std::vector<double> radii;

  Ray(double theta, std::vector<double> radii);
  static Ray log_spaced(double theta, double r_min, double r_max, std::size_t points);
};

enum class Verdict { order_leq_k, less_than_exponential, exponential_order_k, singularity_detected, inconclusive };

std::string_view verdict_name(Verdict v);

// q-exponential model: ln|f| <= ln C + ln^2(r+h) / (2 s ln q) + alpha ln(r+h)
struct QMode {
  double q = 2.0;
  double s = 1.0;
  double h = 1.0;
};

struct ScanOptions {
  std::vector<double> ks{0.5, 1.0, 2.0, 4.0};
  std::optional<QMode> q_mode;
  double b_tol = 1e-3;
  double guard = 1e100;
  std::size_t min_points = 8;
  // An exponential verdict is re-checked on the ray extended by this many
  // decades past its last radius; 0 disables the check.
  double confirm_decades = 2.0;
  // 0: SUMMA_THREADS or hardware concurrency
  unsigned threads = 0;
};

struct SamplePoint {
  double r = 0.0;
  Complex f{};
  bool ok = false;
  std::string error;
};

struct KFit {
  double k = 1.0;
  double log_A = 0.0;   // raw least-squares fit of the envelope
  double B_hat = 0.0;
  double B_norm = 0.0;  // envelope rise across the window
  double slope_ratio = 0.0;
  // rms of the envelope against {1, ln r, r^k} and against {1, ln r, ln^2 r};
  // a log-polynomial envelope that fits at least as well means growth below order k
  double power_rms = 0.0;
  double polylog_rms = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

struct QFit {
  QMode mode;
  double log_C = 0.0;
  double alpha = 0.0;
  double excess = 0.0;  // residual quadratic coefficient; holds when <= 0.05
  bool holds = false;
};

struct RayReport {
  double theta = 0.0;
  std::vector<SamplePoint> samples;
  std::vector<KFit> fits;
  std::optional<QFit> q_fit;
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> singular_radius;
  std::optional<double> exponential_k;
  std::size_t window_lo = 0, window_hi = 0;  // sample indices, half-open
  std::size_t failed_points = 0;
  // last radius of the confirmation extension, when one was run
  std::optional<double> confirmed_to;
};

struct GrowthReport {
  std::string label;
  std::vector<RayReport> rays;

  // singularity > exponential > inconclusive > less_than_exponential
  Verdict overall() const;
  std::string to_csv() const;
  Json to_json() const;
};

GrowthReport growth_scan(const ContinuationEvaluator& ev, const std::vector<Ray>& rays, const ScanOptions& opts = {});

// Peaks of |f| on rays approaching the positive axis.
struct BlowupReport {
  bool detected = false;
  double radius = 0.0;
  std::vector<double> thetas, peak_r, peak_abs;
};

BlowupReport approach_blowup(const ContinuationEvaluator& ev, std::vector<double> thetas, double r_min, double r_max,
                             std::size_t points = 121);

unsigned scan_threads(unsigned requested = 0);

}  // namespace summa::cont
