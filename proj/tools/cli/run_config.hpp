#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parabolic::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kMathFailure = 1,
  kNoHorizon = 2,
  kConfigError = 64,
};

/// Bad key, bad value, unreadable file, unknown problem or suite.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero for grid_n, dt and delta means "take the card default".
struct RunConfig {
  std::string problem = "heat";
  int dim = 1;
  int grid_n = 0;
  double dt = 0.0;
  double delta = 0.0;
  double alpha = 0.5;
  double tol = 1e-9;
  double residual_tol = 1e-3;
  int max_iter = 40;
  int max_halvings = 12;
  std::uint64_t seed = 20240901;
  std::string out = ".";
  std::string suite = "all";
  std::string input;
  int order = 0;
};

/// `key = value` lines; blank lines and `#` comments are skipped.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Sets one key; `-` and `_` are interchangeable in key names.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// alpha in (0, 1), N even and >= 8, positive tolerances and steps.
void validate(const RunConfig& config);

}  // namespace parabolic::cli
