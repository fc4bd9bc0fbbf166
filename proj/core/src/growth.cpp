#include "summa/continuation/growth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "detail/lsq.hpp"
#include "summa/error.hpp"
#include "summa/specfun/lerch.hpp"

namespace summa::cont {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLogFloor = -745.0;
constexpr double kGolden = 0.6180339887498949;

template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

SamplePoint sample(const ContinuationEvaluator& ev, double theta, double r) {
  SamplePoint p;
  p.r = r;
  try {
    p.f = ev(std::polar(r, theta));
    p.ok = true;
  } catch (const Error& e) {
    p.error = e.what();
  }
  return p;
}

double log_abs(Complex f) {
  double a = std::abs(f);
  if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
  return a > 0.0 ? std::max(std::log(a), kLogFloor) : kLogFloor;
}

struct Peak {
  double r = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  bool blew_up = false;
};

// Maximize ln|f| over ln r in [lo, hi].
Peak golden_max(const ContinuationEvaluator& ev, double theta, double r_lo, double r_hi, double guard,
                int iterations = 60) {
  Peak best;
  auto g = [&](double x) {
    double r = std::exp(x);
    SamplePoint p = sample(ev, theta, r);
    double v = p.ok ? log_abs(p.f) : std::numeric_limits<double>::infinity();
    if (!std::isfinite(v) || v > std::log(guard)) best.blew_up = true;
    if (v > best.log_value) {
      best.log_value = v;
      best.r = r;
    }
    return v;
  };
  double a = std::log(r_lo), b = std::log(r_hi);
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < iterations && !best.blew_up && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = g(d);
    }
  }
  return best;
}

void detect_singularity(const ContinuationEvaluator& ev, RayReport& rr, const ScanOptions& opts) {
  const auto& s = rr.samples;
  const double log_guard = std::log(opts.guard);
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].ok) ok.push_back(i);
  auto bad = [&](std::size_t i) { return log_abs(s[i].f) > log_guard; };

  // isolated blowups: a bad point followed by a good one
  for (std::size_t j = 0; j + 1 < ok.size(); ++j) {
    if (bad(ok[j]) && !bad(ok[j + 1])) {
      rr.singular_radius = s[ok[j]].r;
      return;
    }
  }

  struct Candidate {
    std::size_t j;
    double sharpness;
  };
  std::vector<Candidate> cands;
  for (std::size_t j = 1; j + 1 < ok.size(); ++j) {
    double y = log_abs(s[ok[j]].f), yl = log_abs(s[ok[j - 1]].f), yr = log_abs(s[ok[j + 1]].f);
    if (y > yl && y >= yr && y <= log_guard) cands.push_back({j, y - std::min(yl, yr)});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.sharpness > y.sharpness; });
  if (cands.size() > 5) cands.resize(5);
  for (const auto& c : cands) {
    if (c.sharpness < std::log(1.05)) continue;
    std::size_t il = ok[c.j - 1], ir = ok[c.j + 1];
    Peak p = golden_max(ev, rr.theta, s[il].r, s[ir].r, opts.guard);
    double neighbor = std::max(log_abs(s[il].f), log_abs(s[ir].f));
    if (p.blew_up || p.log_value > neighbor + std::log(1e6)) {
      rr.singular_radius = p.r;
      return;
    }
  }
}

void fit_ray(RayReport& rr, const ScanOptions& opts) {
  const auto& s = rr.samples;
  const double log_guard = std::log(opts.guard);
  const double r0 = s.front().r;
  const bool wide = s.back().r >= 1000.0 * r0;
  std::size_t lo = 0;
  if (wide)
    while (lo < s.size() && s[lo].r < 10.0 * r0 * (1.0 - 1e-12)) ++lo;
  std::size_t hi = s.size();
  // a suffix above the guard truncates the window
  std::size_t first_bad = hi;
  for (std::size_t i = lo; i < hi; ++i)
    if (s[i].ok && log_abs(s[i].f) > log_guard) {
      first_bad = i;
      break;
    }
  hi = first_bad;
  rr.window_lo = lo;
  rr.window_hi = hi;

  std::vector<double> r, y;
  double env = -std::numeric_limits<double>::infinity();
  for (std::size_t i = lo; i < hi; ++i) {
    if (!s[i].ok) continue;
    env = std::max(env, log_abs(s[i].f));
    r.push_back(s[i].r);
    y.push_back(env);
  }
  const std::size_t n = r.size();
  for (double k : opts.ks) {
    KFit fit;
    fit.k = k;
    if (n < opts.min_points || std::pow(r.back() / r.front(), k) < 20.0) {
      rr.fits.push_back(fit);
      continue;
    }
    const double re_k = std::pow(r.back(), k);
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd Y(n);
    for (std::size_t i = 0; i < n; ++i) {
      X(i, 0) = 1.0;
      X(i, 1) = std::pow(r[i], k) / re_k;
      Y(i) = y[i];
    }
    auto ls = summa::detail::least_squares(X, Y);
    fit.log_A = ls.beta(0);
    fit.B_hat = ls.beta(1) / re_k;
    fit.B_norm = y.back() - y.front();

    // required slope S(r) = (y(r) - y0) / (r^k - r0^k), compared at the end and the geometric middle
    const double rm = std::sqrt(r.front() * r.back());
    std::size_t im = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(std::log(r[i] / rm)) < std::abs(std::log(r[im] / rm))) im = i;
    if (im == 0) im = 1;
    const double r0k = std::pow(r.front(), k);
    const double s_end = fit.B_norm / (re_k - r0k);
    const double s_mid = std::max(y[im] - y.front(), opts.b_tol) / (std::pow(r[im], k) - r0k);
    fit.slope_ratio = s_end / s_mid;

    Eigen::MatrixXd P(n, 3), Q(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double L = std::log(r[i]);
      P(i, 0) = Q(i, 0) = 1.0;
      P(i, 1) = Q(i, 1) = L;
      P(i, 2) = X(i, 1);
      Q(i, 2) = L * L;
    }
    fit.power_rms = summa::detail::least_squares(P, Y).rms;
    fit.polylog_rms = summa::detail::least_squares(Q, Y).rms;

    if (fit.B_norm <= opts.b_tol || fit.slope_ratio < 0.5 || fit.polylog_rms <= fit.power_rms)
      fit.verdict = Verdict::order_leq_k;
    else
      fit.verdict = Verdict::exponential_order_k;
    rr.fits.push_back(fit);
  }

  if (opts.q_mode && n >= opts.min_points) {
    const auto& qm = *opts.q_mode;
    QFit qf;
    qf.mode = qm;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd Y(n);
    const double denom = 2.0 * qm.s * std::log(qm.q);
    for (std::size_t i = 0; i < n; ++i) {
      double L = std::log(r[i] + qm.h);
      X(i, 0) = 1.0;
      X(i, 1) = L;
      X(i, 2) = L * L;
      Y(i) = y[i] - L * L / denom;
    }
    auto ls = summa::detail::least_squares(X, Y);
    qf.log_C = ls.beta(0);
    qf.alpha = ls.beta(1);
    qf.excess = ls.beta(2);
    qf.holds = qf.excess <= 0.05;
    rr.q_fit = qf;
  }
}

void decide(RayReport& rr) {
  if (rr.singular_radius) {
    rr.verdict = Verdict::singularity_detected;
    return;
  }
  bool all_leq = !rr.fits.empty();
  bool any_exp = false;
  for (const auto& f : rr.fits) {
    if (f.verdict != Verdict::order_leq_k) all_leq = false;
    if (f.verdict == Verdict::exponential_order_k) {
      any_exp = true;
      // growth exactly of order k: the slope stabilizes
      if (!rr.exponential_k && f.slope_ratio <= 2.0) rr.exponential_k = f.k;
    }
  }
  if (any_exp)
    rr.verdict = Verdict::exponential_order_k;
  else if (all_leq)
    rr.verdict = Verdict::less_than_exponential;
  else
    rr.verdict = Verdict::inconclusive;
}

int severity(Verdict v) {
  switch (v) {
    case Verdict::singularity_detected: return 4;
    case Verdict::exponential_order_k: return 3;
    case Verdict::inconclusive: return 2;
    case Verdict::order_leq_k: return 1;
    case Verdict::less_than_exponential: return 0;
  }
  return 2;
}

// Growth of order k persists on a longer ray; log-type growth that only
// resembled r^k on the original window does not.
void confirm_exponential(const ContinuationEvaluator& ev, RayReport& rr, const ScanOptions& opts) {
  const auto& s = rr.samples;
  const double step = std::log(s.back().r / s[s.size() - 2].r);
  const double last = s.back().r;
  const double stop = last * std::pow(10.0, opts.confirm_decades);
  std::vector<SamplePoint> ext;
  for (double r = last * std::exp(step); r <= stop * (1.0 + 1e-9); r *= std::exp(step)) {
    SamplePoint p = sample(ev, rr.theta, r);
    if (!p.ok) break;
    ext.push_back(std::move(p));
    if (log_abs(ext.back().f) > std::log(opts.guard)) break;
  }
  if (ext.empty()) return;
  rr.confirmed_to = ext.back().r;
  rr.samples.insert(rr.samples.end(), ext.begin(), ext.end());
  rr.fits.clear();
  rr.exponential_k.reset();
  fit_ray(rr, opts);
  decide(rr);
}

}  // namespace

Ray::Ray(double th, std::vector<double> r) : theta(specfun::normalize_angle(th)), radii(std::move(r)) {
  specfun::c_theta(theta);  // rejects the positive real axis
  if (radii.empty()) fail(ErrorCode::InvalidArgument, "ray needs radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      fail(ErrorCode::InvalidArgument, "ray radii must be positive and increasing");
}

Ray Ray::log_spaced(double theta, double r_min, double r_max, std::size_t points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 2) fail(ErrorCode::InvalidArgument, "invalid radius grid");
  std::vector<double> r(points);
  const double a = std::log10(r_min), b = std::log10(r_max);
  for (std::size_t i = 0; i < points; ++i)
    r[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  return Ray(theta, std::move(r));
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::order_leq_k: return "order_leq_k";
    case Verdict::less_than_exponential: return "less_than_exponential";
    case Verdict::exponential_order_k: return "exponential_order_k";
    case Verdict::singularity_detected: return "singularity_detected";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

unsigned scan_threads(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = requested ? requested : hw;
  if (const char* env = std::getenv("SUMMA_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

GrowthReport growth_scan(const ContinuationEvaluator& ev, const std::vector<Ray>& rays, const ScanOptions& opts) {
  if (opts.ks.empty()) fail(ErrorCode::InvalidArgument, "growth scan needs at least one k");
  for (double k : opts.ks)
    if (!(k > 0.0)) fail(ErrorCode::InvalidArgument, "growth orders k must be positive");
  if (opts.q_mode && (!(opts.q_mode->q > 1.0) || !(opts.q_mode->s > 0.0)))
    fail(ErrorCode::InvalidArgument, "q-mode needs q > 1 and s > 0");

  GrowthReport report;
  report.label = ev.label();
  report.rays.resize(rays.size());
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    report.rays[i].theta = rays[i].theta;
    report.rays[i].samples.resize(rays[i].radii.size());
    for (std::size_t j = 0; j < rays[i].radii.size(); ++j) tasks.emplace_back(i, j);
  }
  const unsigned threads = scan_threads(opts.threads);
  parallel_for(tasks.size(), threads, [&](std::size_t t) {
    auto [i, j] = tasks[t];
    report.rays[i].samples[j] = sample(ev, rays[i].theta, rays[i].radii[j]);
  });
  parallel_for(rays.size(), threads, [&](std::size_t i) {
    RayReport& rr = report.rays[i];
    for (const auto& p : rr.samples)
      if (!p.ok) ++rr.failed_points;
    detect_singularity(ev, rr, opts);
    fit_ray(rr, opts);
    decide(rr);
    if (rr.verdict == Verdict::exponential_order_k && opts.confirm_decades > 0.0 && rr.samples.size() >= 2)
      confirm_exponential(ev, rr, opts);
  });
  return report;
}

Verdict GrowthReport::overall() const {
  Verdict worst = Verdict::less_than_exponential;
  for (const auto& r : rays)
    if (severity(r.verdict) > severity(worst)) worst = r.verdict;
  return worst;
}

std::string GrowthReport::to_csv() const {
  std::ostringstream out;
  out << "theta,r,re_f,im_f,abs_f,k,fitted_A,fitted_B,verdict\n";
  for (const auto& ray : rays) {
    for (const auto& p : ray.samples) {
      for (const auto& f : ray.fits) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out << format_double(ray.theta) << ',' << format_double(p.r) << ','
            << format_double(p.ok ? p.f.real() : nan) << ',' << format_double(p.ok ? p.f.imag() : nan) << ','
            << format_double(p.ok ? std::abs(p.f) : nan) << ',' << format_double(f.k) << ','
            << format_double(std::exp(f.log_A)) << ',' << format_double(f.B_hat) << ','
            << verdict_name(ray.verdict) << '\n';
      }
    }
  }
  return out.str();
}

Json GrowthReport::to_json() const {
  Json j;
  j["label"] = label;
  j["overall"] = std::string(verdict_name(overall()));
  Json arr = Json::array();
  for (const auto& ray : rays) {
    Json r;
    r["theta"] = ray.theta;
    r["verdict"] = std::string(verdict_name(ray.verdict));
    r["points"] = ray.samples.size();
    r["failed_points"] = ray.failed_points;
    if (ray.confirmed_to) r["confirmed_to"] = *ray.confirmed_to;
    if (ray.singular_radius) r["singular_radius"] = *ray.singular_radius;
    if (ray.exponential_k) r["exponential_k"] = *ray.exponential_k;
    Json fits = Json::array();
    for (const auto& f : ray.fits)
      fits.push_back({{"k", f.k},
                      {"log_A", f.log_A},
                      {"B_hat", f.B_hat},
                      {"B_norm", f.B_norm},
                      {"slope_ratio", std::isfinite(f.slope_ratio) ? f.slope_ratio : 1e308},
                      {"power_rms", f.power_rms},
                      {"polylog_rms", f.polylog_rms},
                      {"verdict", std::string(verdict_name(f.verdict))}});
    r["fits"] = fits;
    if (ray.q_fit)
      r["q_fit"] = {{"q", ray.q_fit->mode.q},   {"s", ray.q_fit->mode.s},         {"h", ray.q_fit->mode.h},
                    {"log_C", ray.q_fit->log_C}, {"alpha", ray.q_fit->alpha},     {"excess", ray.q_fit->excess},
                    {"holds", ray.q_fit->holds}};
    arr.push_back(r);
  }
  j["rays"] = arr;
  return j;
}

BlowupReport approach_blowup(const ContinuationEvaluator& ev, std::vector<double> thetas, double r_min, double r_max,
                             std::size_t points) {
  if (thetas.empty()) fail(ErrorCode::InvalidArgument, "approach_blowup needs directions");
  std::sort(thetas.begin(), thetas.end(), std::greater<>());
  BlowupReport rep;
  rep.thetas = thetas;
  rep.peak_r.resize(thetas.size());
  rep.peak_abs.resize(thetas.size());
  const unsigned threads = scan_threads();
  parallel_for(thetas.size(), threads, [&](std::size_t t) {
    Ray ray = Ray::log_spaced(thetas[t], r_min, r_max, points);
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ray.radii.size(); ++i) {
      SamplePoint p = sample(ev, ray.theta, ray.radii[i]);
      double v = p.ok ? log_abs(p.f) : -std::numeric_limits<double>::infinity();
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    double lo = ray.radii[best == 0 ? 0 : best - 1];
    double hi = ray.radii[std::min(best + 1, ray.radii.size() - 1)];
    Peak p = golden_max(ev, ray.theta, lo, hi, 1e100);
    if (p.log_value < best_v) p = Peak{ray.radii[best], best_v, false};
    rep.peak_r[t] = p.r;
    rep.peak_abs[t] = std::exp(p.log_value);
  });
  bool increasing = true;
  for (std::size_t i = 1; i < thetas.size(); ++i)
    if (!(rep.peak_abs[i] > rep.peak_abs[i - 1])) increasing = false;
  const std::size_t n = thetas.size();
  bool converging = n >= 3;
  if (converging) {
    double last = rep.peak_r[n - 1];
    for (std::size_t i = n - 3; i < n; ++i)
      if (std::abs(rep.peak_r[i] - last) > 0.05 * last) converging = false;
  }
  rep.detected = increasing && converging && rep.peak_abs.back() > 2.0 * rep.peak_abs.front();
  rep.radius = rep.peak_r.back();
  return rep;
}

}  // namespace summa::cont
