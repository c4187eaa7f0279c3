#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace parabolic::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value for " + key + ": '" + value + "'");
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "problem") {
    config.problem = value;
  } else if (key == "n") {
    config.dim = parse_number<int>(key, value);
  } else if (key == "grid_n") {
    config.grid_n = parse_number<int>(key, value);
  } else if (key == "dt") {
    config.dt = parse_number<double>(key, value);
  } else if (key == "delta") {
    config.delta = parse_number<double>(key, value);
  } else if (key == "alpha") {
    config.alpha = parse_number<double>(key, value);
  } else if (key == "tol") {
    config.tol = parse_number<double>(key, value);
  } else if (key == "residual_tol") {
    config.residual_tol = parse_number<double>(key, value);
  } else if (key == "max_iter") {
    config.max_iter = parse_number<int>(key, value);
  } else if (key == "max_halvings") {
    config.max_halvings = parse_number<int>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    config.out = value;
  } else if (key == "suite") {
    config.suite = value;
  } else if (key == "input") {
    config.input = value;
  } else if (key == "order") {
    config.order = parse_number<int>(key, value);
  } else {
    throw ConfigError("unknown config key '" + raw_key + "'");
  }
}

void validate(const RunConfig& c) {
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (c.dim != 1 && c.dim != 2) throw ConfigError("n (torus dimension) must be 1 or 2");
  if (c.grid_n != 0 && (c.grid_n < 8 || c.grid_n % 2 != 0)) {
    throw ConfigError("grid-n must be even and at least 8");
  }
  if (c.dt < 0.0 || !std::isfinite(c.dt)) throw ConfigError("dt must be positive");
  if (c.delta < 0.0 || !std::isfinite(c.delta)) throw ConfigError("delta must be positive");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(c.residual_tol > 0.0)) throw ConfigError("residual_tol must be positive");
  if (c.max_iter < 1) throw ConfigError("max_iter must be positive");
  if (c.max_halvings < 0) throw ConfigError("max_halvings must be non-negative");
  if (c.order != 0 && (c.order < 2 || c.order % 2 != 0)) {
    throw ConfigError("order must be even and at least 2");
  }
  if (c.out.empty()) throw ConfigError("out must name a directory");
}

}  // namespace parabolic::cli
