#include "summa_cli/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "summa/classify/classify.hpp"
#include "summa/continuation/growth.hpp"
#include "summa/error.hpp"
#include "summa/json_util.hpp"
#include "summa/momentpde/momentpde.hpp"
#include "summa/seqcore/descriptor_json.hpp"
#include "summa/seqcore/series.hpp"

namespace summa::cli {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

double parse_real(const std::string& s) {
  if (s.empty()) fail(ErrorCode::InvalidArgument, "empty number");
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) fail(ErrorCode::InvalidArgument, "cannot read number '" + s + "'");
  return v;
}

// Writes into --out when given, else to the stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : dir_(cfg.out_dir), out_(out) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  bool to_files() const { return !dir_.empty(); }
  std::string emit(const std::string& name, const std::string& text) {
    if (dir_.empty()) {
      out_ << text;
      if (text.empty() || text.back() != '\n') out_ << '\n';
      return {};
    }
    std::string path = (std::filesystem::path(dir_) / name).string();
    write_text_file(path, text);
    return path;
  }
  std::ostream& out() { return out_; }

 private:
  std::string dir_;
  std::ostream& out_;
};

bool exact_mode(const RunConfig& cfg) {
  if (cfg.mode == "exact") return true;
  if (cfg.mode == "float") return false;
  fail(ErrorCode::InvalidArgument, "--mode must be exact or float");
}

std::string format_or(const RunConfig& cfg, const char* def) {
  std::string f = cfg.format.empty() ? def : cfg.format;
  if (f != "json" && f != "csv") fail(ErrorCode::InvalidArgument, "--format must be json or csv");
  return f;
}

seq::SequenceDescriptor load_descriptor(const RunConfig& cfg) {
  if (cfg.seq_path.empty()) fail(ErrorCode::InvalidArgument, "--seq is required");
  return seq::descriptor_from_json(read_json_file(cfg.seq_path));
}

std::vector<double> angles(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) out.push_back(parse_angle(t));
  return out;
}

cont::EvaluatorOptions evaluator_options(const RunConfig& cfg) {
  cont::EvaluatorOptions eo;
  eo.term_budget = cfg.budget;
  return eo;
}

int verdict_exit(classify::Verdict v) {
  switch (v) {
    case classify::Verdict::preserves: return kExitOk;
    case classify::Verdict::not_preserves: return kExitNotPreserves;
    case classify::Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

int cmd_classify(const RunConfig& cfg, Sink& sink) {
  auto d = load_descriptor(cfg);
  classify::NumericalOptions opts;
  if (!cfg.thetas.empty()) opts.thetas = angles(cfg.thetas);
  opts.ks = cfg.ks;
  opts.r_min = cfg.r_min;
  opts.r_max = cfg.r_max;
  opts.points = cfg.points;
  opts.eval = evaluator_options(cfg);
  opts.q = cfg.q;
  auto cert = classify::classify_descriptor(d, opts);
  Json j = classify::to_json(cert);
  if (sink.to_files()) {
    for (const auto& [target, rep] : cert.scans) {
      std::string name = "scan_" + std::string(cont::target_name(target)) + ".csv";
      sink.emit(name, rep.to_csv());
      j["evidence"].push_back({{"kind", "scan_csv"}, {"target", std::string(cont::target_name(target))}, {"path", name}});
    }
    std::string path = sink.emit("certificate.json", canonical_dump(j));
    sink.out() << "verdict " << classify::verdict_name(cert.verdict) << " rule " << classify::rule_name(cert.route.rule)
               << " basis " << classify::basis_name(cert.basis) << " -> " << path << '\n';
  } else {
    sink.emit("certificate.json", canonical_dump(j));
  }
  return verdict_exit(cert.verdict);
}

int cmd_scan(const RunConfig& cfg, Sink& sink) {
  auto d = load_descriptor(cfg);
  auto ev = cont::ContinuationEvaluator::create(d, cont::parse_target(cfg.target), evaluator_options(cfg));
  std::vector<double> thetas = cfg.thetas.empty() ? classify::NumericalOptions{}.thetas : angles(cfg.thetas);
  std::vector<cont::Ray> rays;
  for (double th : thetas) rays.push_back(cont::Ray::log_spaced(th, cfg.r_min, cfg.r_max, cfg.points));
  cont::ScanOptions so;
  so.ks = cfg.ks;
  if (cfg.q) so.q_mode = cont::QMode{*cfg.q, cfg.q_s, 1.0};
  auto rep = cont::growth_scan(ev, rays, so);
  if (format_or(cfg, "csv") == "csv") {
    sink.emit("scan.csv", rep.to_csv());
  } else {
    sink.emit("scan.json", canonical_dump(rep.to_json()));
  }
  if (sink.to_files()) sink.out() << "overall " << cont::verdict_name(rep.overall()) << '\n';
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, Sink& sink) {
  auto d = load_descriptor(cfg);
  Json values = Json::array();
  const bool exact = exact_mode(cfg) && d.exact_capable();
  for (std::size_t n = 0; n <= cfg.n_terms; ++n)
    values.push_back(exact ? number_to_json(Number(seq::seq_eval_exact(d, n))) : Json(seq::seq_eval(d, n)));
  Json j{{"descriptor", seq::to_json(d)}, {"m", values}};
  if (!cfg.points_z.empty()) {
    auto ev = cont::ContinuationEvaluator::create(d, cont::parse_target(cfg.target), evaluator_options(cfg));
    Json pts = Json::array();
    for (const auto& text : cfg.points_z) {
      auto [re, im] = parse_point(text);
      Complex f = ev(Complex(re, im));
      pts.push_back({{"z", {re, im}}, {"f", {f.real(), f.imag()}}});
    }
    j["target"] = std::string(cont::target_name(ev.target()));
    j["strategy"] = std::string(cont::strategy_name(ev.strategy()));
    j["cut_radius"] = ev.cut_radius();
    j["values"] = pts;
  }
  sink.emit("eval.json", canonical_dump(j));
  return kExitOk;
}

std::string series_csv(const seq::TruncatedSeries& s) {
  std::ostringstream o;
  o << "n,re,im\n";
  for (std::size_t n = 0; n < s.size(); ++n)
    o << n << ',' << format_double(s[n].real()) << ',' << format_double(s[n].imag()) << '\n';
  return o.str();
}

int cmd_borel(const RunConfig& cfg, Sink& sink) {
  if (cfg.series_path.empty()) fail(ErrorCode::InvalidArgument, "--series is required");
  Json input = read_json_file(cfg.series_path);
  const std::string fmt = format_or(cfg, "json");
  if (cfg.q) {
    auto out = seq::q_borel(cfg.q_s, *cfg.q, seq::series_from_json(input));
    sink.emit(fmt == "csv" ? "borel.csv" : "borel.json", fmt == "csv" ? series_csv(out) : canonical_dump(seq::series_to_json(out)));
    return kExitOk;
  }
  auto d = load_descriptor(cfg);
  if (cfg.inverse) d = seq::inverse(d);
  if (exact_mode(cfg)) {
    auto out = seq::borel(d, seq::exact_series_from_json(input));
    sink.emit(fmt == "csv" ? "borel.csv" : "borel.json",
              fmt == "csv" ? series_csv(seq::to_float(out)) : canonical_dump(seq::series_to_json(out)));
  } else {
    auto out = seq::borel(d, seq::series_from_json(input));
    sink.emit(fmt == "csv" ? "borel.csv" : "borel.json", fmt == "csv" ? series_csv(out) : canonical_dump(seq::series_to_json(out)));
  }
  return kExitOk;
}

int cmd_pde(const RunConfig& cfg, Sink& sink) {
  if (cfg.problem_path.empty()) fail(ErrorCode::InvalidArgument, "--problem is required");
  auto cp = pde::problem_from_json(read_json_file(cfg.problem_path));
  pde::validate(cp);
  const bool exact = exact_mode(cfg);

  if (cfg.probe) {
    if (!pde::is_heat_operator(cp.P)) fail(ErrorCode::InvalidArgument, "--probe needs the heat operator lambda - zeta^2");
    std::vector<double> dirs = angles(cfg.directions.empty() ? std::vector<std::string>{"pi"} : cfg.directions);
    pde::HeatProbeOptions po;
    po.terms = cfg.probe_terms;
    po.polynomial_data = cfg.polynomial_data;
    po.r_min = cfg.r_min;
    po.r_max = cfg.r_max;
    po.points = cfg.points;
    po.scan.ks = cfg.ks;
    auto rep = pde::heat_summability_probe(cp.m, cp.phi.front(), cp.z0, dirs, po);
    if (!rep.note.empty()) sink.out() << "note: " << rep.note << '\n';
    if (rep.scan && format_or(cfg, "csv") == "csv") {
      sink.emit("probe.csv", rep.scan->to_csv());
    } else {
      Json j{{"closed_form", rep.closed_form}, {"note", rep.note}, {"w", seq::series_to_json(rep.w)}};
      if (rep.scan) j["scan"] = rep.scan->to_json();
      if (rep.disc) j["disc_gevrey_order"] = rep.disc->s_hat;
      sink.emit("probe.json", canonical_dump(j));
    }
    if (rep.scan && sink.to_files()) sink.out() << "overall " << cont::verdict_name(rep.scan->overall()) << '\n';
    return kExitOk;
  }

  if (cfg.check_prop9) {
    pde::Prop9Check r;
    if (exact) {
      r = pde::check_prop9(pde::solve_formal_exact(cp), pde::solve_formal_exact(pde::classical(cp)), cp.m);
    } else {
      r = pde::check_prop9(pde::solve_formal(cp), pde::solve_formal(pde::classical(cp)), cp.m);
    }
    Json j{{"holds", r.holds}, {"max_residual", r.max_residual}, {"mode", cfg.mode}};
    sink.emit("prop9.json", canonical_dump(j));
    return r.holds ? kExitOk : kExitNotPreserves;
  }

  Json sol = exact ? pde::bivariate_to_json(pde::solve_formal_exact(cp)) : pde::bivariate_to_json(pde::solve_formal(cp));
  sink.emit("solution.json", canonical_dump(sol));
  return kExitOk;
}

int cmd_witness(const RunConfig& cfg, Sink& sink) {
  if (!cfg.q) fail(ErrorCode::InvalidArgument, "--q is required");
  auto b = classify::strict_inclusion_witness(*cfg.q);
  Json j{{"descriptor", seq::to_json(b.m)},
         {"summability", classify::to_json(b.summability)},
         {"q_gevrey", classify::to_json(b.q_gevrey)},
         {"sigma_hat", b.sigma_hat},
         {"window", {b.window.lo, b.window.hi}}};
  sink.emit("witness.json", canonical_dump(j));
  if (sink.to_files())
    sink.out() << "summability " << classify::verdict_name(b.summability.verdict) << " q-gevrey "
               << classify::verdict_name(b.q_gevrey.verdict) << " sigma_hat " << format_double(b.sigma_hat) << '\n';
  return kExitOk;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty()) fail(ErrorCode::InvalidArgument, "empty angle");
  auto p = s.find("pi");
  if (p == std::string::npos) return parse_real(s);
  std::string coef = s.substr(0, p), rest = s.substr(p + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1.0;
  if (coef == "-") c = -1.0;
  else if (coef == "+") c = 1.0;
  else if (!coef.empty()) c = parse_real(coef);
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') fail(ErrorCode::InvalidArgument, "cannot read angle '" + std::string(text) + "'");
    den = parse_real(rest.substr(1));
    if (den == 0.0) fail(ErrorCode::InvalidArgument, "zero denominator in angle");
  }
  return c * std::numbers::pi / den;
}

std::pair<double, double> parse_point(std::string_view text) {
  std::string s(text);
  auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_real(trim(s)), 0.0};
  return {parse_real(trim(s.substr(0, comma))), parse_real(trim(s.substr(comma + 1)))};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Summability-preserving sequences: classification, growth scans, moment PDEs"};
  app.require_subcommand(1);
  app.add_option("--mode", cfg.mode, "exact or float arithmetic")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--budget", cfg.budget, "term budget for continuation recursions");
  app.add_option("--out", cfg.out_dir, "output directory (default: stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--theta", cfg.thetas, "ray directions, e.g. pi/2 (repeatable or comma separated)")->delimiter(',');
    sub->add_option("--kset", cfg.ks, "growth orders k")->delimiter(',');
    sub->add_option("--rmin", cfg.r_min, "smallest radius");
    sub->add_option("--rmax", cfg.r_max, "largest radius");
    sub->add_option("--points", cfg.points, "radii per ray");
  };

  auto* classify_cmd = app.add_subcommand("classify", "classify a sequence descriptor");
  classify_cmd->add_option("--seq", cfg.seq_path, "descriptor JSON")->required();
  classify_cmd->add_option("--q", cfg.q, "classify q-Gevrey preservation for this q");
  add_grid(classify_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "growth scan of a generating function");
  scan_cmd->add_option("--seq", cfg.seq_path, "descriptor JSON")->required();
  scan_cmd->add_option("--target", cfg.target, "forward or inverse")->check(CLI::IsMember({"forward", "inverse"}));
  scan_cmd->add_option("--q", cfg.q, "also fit q-exponential growth for this q");
  scan_cmd->add_option("--qs", cfg.q_s, "q-exponential order");
  add_grid(scan_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "sequence values and continued generating function");
  eval_cmd->add_option("--seq", cfg.seq_path, "descriptor JSON")->required();
  eval_cmd->add_option("--n", cfg.n_terms, "print m(0..n)");
  eval_cmd->add_option("--z", cfg.points_z, "evaluation points re,im (repeatable)");
  eval_cmd->add_option("--target", cfg.target, "forward or inverse")->check(CLI::IsMember({"forward", "inverse"}));

  auto* borel_cmd = app.add_subcommand("borel", "m-Borel or q-Borel transform of a series");
  borel_cmd->add_option("--seq", cfg.seq_path, "descriptor JSON");
  borel_cmd->add_option("--series", cfg.series_path, "series JSON array")->required();
  borel_cmd->add_flag("--inverse", cfg.inverse, "use 1/m");
  borel_cmd->add_option("--q", cfg.q, "q-Borel transform with this q");
  borel_cmd->add_option("--qs", cfg.q_s, "q-Borel order s");

  auto* pde_cmd = app.add_subcommand("pde", "moment differential Cauchy problems");
  pde_cmd->add_option("--problem", cfg.problem_path, "problem JSON")->required();
  pde_cmd->add_flag("--check-prop9", cfg.check_prop9, "compare with the classical problem");
  pde_cmd->add_flag("--probe", cfg.probe, "heat summability probe");
  pde_cmd->add_option("--direction", cfg.directions, "probe directions")->delimiter(',');
  pde_cmd->add_option("--terms", cfg.probe_terms, "probe series length");
  pde_cmd->add_flag("--polynomial-data", cfg.polynomial_data, "initial data is an exact polynomial");
  pde_cmd->add_option("--kset", cfg.ks, "growth orders k")->delimiter(',');
  pde_cmd->add_option("--rmin", cfg.r_min, "smallest radius");
  pde_cmd->add_option("--rmax", cfg.r_max, "largest radius");
  pde_cmd->add_option("--points", cfg.points, "radii per ray");

  auto* witness_cmd = app.add_subcommand("witness", "strict-inclusion counterexample bundle");
  witness_cmd->add_option("--q", cfg.q, "q > 1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    Sink sink(cfg, out);
    if (*classify_cmd) return cmd_classify(cfg, sink);
    if (*scan_cmd) return cmd_scan(cfg, sink);
    if (*eval_cmd) return cmd_eval(cfg, sink);
    if (*borel_cmd) return cmd_borel(cfg, sink);
    if (*pde_cmd) return cmd_pde(cfg, sink);
    if (*witness_cmd) return cmd_witness(cfg, sink);
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace summa::cli
