#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace summa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitNotPreserves = 3,
  kExitInconclusive = 4,
};

struct RunConfig {
  std::string command;
  std::string seq_path;
  std::string problem_path;
  std::string series_path;
  std::string target = "inverse";
  std::vector<std::string> thetas;
  std::vector<double> ks{0.5, 1.0, 2.0, 4.0};
  double r_min = 0.1;
  double r_max = 1e3;
  std::size_t points = 61;
  std::string mode = "exact";
  std::size_t budget = 1'000'000;
  std::string out_dir;
  std::string format;  // json | csv, command-specific default when empty
  std::optional<double> q;
  double q_s = 1.0;
  std::size_t n_terms = 10;
  std::vector<std::string> points_z;
  bool inverse = false;
  bool check_prop9 = false;
  bool probe = false;
  std::vector<std::string> directions;
  std::size_t probe_terms = 120;
  bool polynomial_data = false;
};

// Angles such as "pi", "-pi/2", "3pi/4", "3*pi/4", "0.25" or "2.5e-1".
double parse_angle(std::string_view text);
// "re,im" or "re"
std::pair<double, double> parse_point(std::string_view text);

// Runs one command; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace summa::cli
