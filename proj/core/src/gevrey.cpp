#include "summa/seqcore/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/lsq.hpp"
#include "summa/error.hpp"
#include "summa/seqcore/descriptor_json.hpp"

namespace summa::seq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lfact(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

struct Points {
  std::vector<double> n;
  std::vector<double> y;
};

void check_window(const Window& w) {
  if (w.hi < w.lo || w.hi - w.lo < 16) fail(ErrorCode::WindowTooSmall, "fit window needs n_hi - n_lo >= 16");
}

Points collect(std::span<const double> log_abs, const Window& w) {
  check_window(w);
  if (w.hi >= log_abs.size()) fail(ErrorCode::InvalidArgument, "window exceeds available coefficients");
  Points p;
  for (std::size_t n = w.lo; n <= w.hi; ++n) {
    double v = log_abs[n];
    if (std::isnan(v)) fail(ErrorCode::InvalidArgument, "NaN coefficient");
    if (v == kNegInf) continue;
    if (!std::isfinite(v)) fail(ErrorCode::Overflow, "infinite coefficient in window");
    p.n.push_back(static_cast<double>(n));
    p.y.push_back(v);
  }
  return p;
}

std::vector<double> probe_set(const std::vector<double>& ks) {
  std::vector<double> all = kDefaultProbeKs;
  for (double k : ks) {
    if (!(k > 0.0)) fail(ErrorCode::InvalidArgument, "probe k must be positive");
    all.push_back(k);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// Fit y on the given columns; returns coefficients.
Eigen::VectorXd fit(const std::vector<std::vector<double>>& cols, const std::vector<double>& y) {
  const auto rows = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd X(rows, static_cast<Eigen::Index>(cols.size()));
  Eigen::VectorXd Y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    Y(i) = y[static_cast<std::size_t>(i)];
    for (std::size_t c = 0; c < cols.size(); ++c) X(i, static_cast<Eigen::Index>(c)) = cols[c][static_cast<std::size_t>(i)];
  }
  return detail::least_squares(X, Y).beta;
}

// Smallest K_A and least-squares K_B for y_n <= K_B n + K_A.
std::pair<double, double> envelope_constants(const std::vector<double>& n, const std::vector<double>& y) {
  std::vector<double> ones(n.size(), 1.0);
  Eigen::VectorXd b = fit({ones, n}, y);
  double K_B = b(1);
  double K_A = kNegInf;
  for (std::size_t i = 0; i < n.size(); ++i) K_A = std::max(K_A, y[i] - K_B * n[i]);
  return {K_A, K_B};
}

GevreyEstimate estimate_from_points(const Points& p, const Window& w, const std::vector<double>& ks) {
  if (p.y.size() < 3) fail(ErrorCode::AllZeroWindow, "fewer than three nonzero coefficients in the window");
  std::vector<double> lf(p.n.size()), ones(p.n.size(), 1.0);
  for (std::size_t i = 0; i < p.n.size(); ++i) lf[i] = lfact(static_cast<std::size_t>(p.n[i]));

  const auto rows = static_cast<Eigen::Index>(p.y.size());
  Eigen::MatrixXd X(rows, 3);
  Eigen::VectorXd Y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    auto u = static_cast<std::size_t>(i);
    X(i, 0) = lf[u];
    X(i, 1) = p.n[u];
    X(i, 2) = 1.0;
    Y(i) = p.y[u];
  }
  auto res = detail::least_squares(X, Y);

  GevreyEstimate est;
  est.s_hat = res.beta(0);
  est.log_C = res.beta(1);
  est.log_B = res.beta(2);
  est.fit_residual = res.rms;
  est.n_lo = w.lo;
  est.n_hi = w.hi;

  for (double k : probe_set(ks)) {
    std::vector<double> yk(p.y.size());
    for (std::size_t i = 0; i < yk.size(); ++i) yk[i] = p.y[i] + lf[i] / k;
    Eigen::VectorXd b = fit({lf, p.n, ones}, yk);
    ProbeFit pf;
    pf.k = k;
    pf.excess = b(0);
    pf.holds = pf.excess <= kTolOrder;
    auto [K_A, K_B] = envelope_constants(p.n, yk);
    pf.K_A = K_A;
    pf.K_B = K_B;
    est.is_minus_infinity_evidence[k] = pf.holds;
    est.probes.push_back(pf);
  }
  return est;
}

}  // namespace

bool GevreyEstimate::order_zero(double tol) const { return std::abs(s_hat) < tol && fit_residual < 0.5; }

bool GevreyEstimate::minus_infinity() const {
  return std::all_of(probes.begin(), probes.end(), [](const ProbeFit& p) { return p.holds; });
}

bool QEvidence::minus_infinity() const {
  return std::all_of(probes.begin(), probes.end(), [](const QProbe& p) { return p.holds; });
}

bool PerturbationEvidence::all_pass() const {
  return std::all_of(probes.begin(), probes.end(), [](const ProbeFit& p) { return p.holds; });
}

bool PerturbationEvidence::any_pass() const {
  return std::any_of(probes.begin(), probes.end(), [](const ProbeFit& p) { return p.holds; });
}

GevreyEstimate estimate_order(const SequenceDescriptor& m, Window w) {
  check_window(w);
  EvalOptions opts;
  opts.n_max = std::max(opts.n_max, w.hi);
  std::vector<double> logs(w.hi + 1, 0.0);
  for (std::size_t n = w.lo; n <= w.hi; ++n) logs[n] = seq_log_eval(m, n, opts);
  return estimate_from_points(collect(logs, w), w, {});
}

GevreyEstimate gevrey_order_estimate(const TruncatedSeries& coeffs, Window w, const std::vector<double>& ks) {
  std::vector<double> logs(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    double a = std::abs(coeffs[n]);
    logs[n] = a == 0.0 ? kNegInf : std::log(a);
  }
  return gevrey_order_estimate_log(logs, w, ks);
}

GevreyEstimate gevrey_order_estimate_log(std::span<const double> log_abs, Window w, const std::vector<double>& ks) {
  return estimate_from_points(collect(log_abs, w), w, ks);
}

std::pair<double, int> residual_log(const SequenceDescriptor& m, const SequenceDescriptor& m_tilde, std::size_t n) {
  EvalOptions opts;
  opts.n_max = std::max(opts.n_max, n);
  if (m.kind() == Kind::perturbed && same_descriptor(m.as<PerturbedSeq>().base, m_tilde)) {
    const Tail& t = m.as<PerturbedSeq>().tail;
    return {t.log_abs(n), t.sign(n)};
  }
  if (m_tilde.kind() == Kind::perturbed && same_descriptor(m_tilde.as<PerturbedSeq>().base, m)) {
    const Tail& t = m_tilde.as<PerturbedSeq>().tail;
    return {t.log_abs(n), -t.sign(n)};
  }
  double lm = seq_log_eval(m, n, opts);
  double lt = seq_log_eval(m_tilde, n, opts);
  if (lm == lt) return {kNegInf, 0};
  double hi = std::max(lm, lt);
  double d = std::min(lm, lt) - hi;
  return {hi + std::log(-std::expm1(d)), lm > lt ? 1 : -1};
}

PerturbationEvidence perturbation_check(const SequenceDescriptor& m, const SequenceDescriptor& m_tilde,
                                        const std::vector<double>& ks, Window w,
                                        const std::optional<QModeParams>& q_mode) {
  check_window(w);
  PerturbationEvidence ev;
  ev.window = w;
  std::vector<double> logs(w.hi + 1, kNegInf);
  bool identical = same_descriptor(m, m_tilde);
  if (!identical) {
    identical = true;
    for (std::size_t n = w.lo; n <= w.hi; ++n) {
      logs[n] = residual_log(m, m_tilde, n).first;
      if (logs[n] != kNegInf) identical = false;
    }
  }
  if (identical) {
    ev.identical = true;
    for (double k : probe_set(ks)) ev.probes.push_back(ProbeFit{k, true, kNegInf, kNegInf, 0.0});
    if (q_mode) {
      QEvidence q;
      q.q = q_mode->q;
      q.sigma_hat = kNegInf;
      for (double s : q_mode->s_probes) q.probes.push_back(QProbe{s, true, kNegInf, 0.0, 0.0});
      ev.q = q;
    }
    return ev;
  }

  ev.gevrey = gevrey_order_estimate_log(logs, w, ks);
  ev.probes = ev.gevrey->probes;

  if (q_mode) {
    if (!(q_mode->q > 1.0)) fail(ErrorCode::InvalidArgument, "q-mode requires q > 1");
    Points p = collect(logs, w);
    std::vector<double> ones(p.n.size(), 1.0), lf(p.n.size()), gauss(p.n.size());
    const double lq = std::log(q_mode->q);
    for (std::size_t i = 0; i < p.n.size(); ++i) {
      lf[i] = lfact(static_cast<std::size_t>(p.n[i]));
      gauss[i] = 0.5 * p.n[i] * (p.n[i] - 1.0) * lq;
    }
    QEvidence q;
    q.q = q_mode->q;
    q.sigma_hat = fit({ones, p.n, lf, gauss}, p.y)(3);
    for (double s : q_mode->s_probes) {
      std::vector<double> ys(p.y.size());
      for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = p.y[i] + s * gauss[i];
      Eigen::VectorXd b = fit({ones, p.n, lf}, ys);
      QProbe qp;
      qp.s = s;
      qp.holds = q.sigma_hat + s <= kTolOrder;
      qp.alpha = b(2);
      qp.log_B = b(1);
      double la = kNegInf;
      for (std::size_t i = 0; i < ys.size(); ++i) la = std::max(la, ys[i] - qp.alpha * lf[i] - qp.log_B * p.n[i]);
      qp.log_A = la;
      q.probes.push_back(qp);
    }
    ev.q = q;
  }
  return ev;
}

}  // namespace summa::seq
