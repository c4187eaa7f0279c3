#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "parabolic/csv.hpp"
#include "parabolic/ellipticity.hpp"
#include "parabolic/error.hpp"
#include "parabolic/fixed_point.hpp"

namespace parabolic::cli {

using Json = nlohmann::ordered_json;

namespace {

std::filesystem::path output_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + config.out + ": " + ec.message());
  return dir;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

Json header(const RunConfig& config, const Resolved& r) {
  Json j;
  j["problem"] = r.card->name;
  j["n"] = r.card->dim;
  j["grid_n"] = r.grid_n;
  j["alpha"] = config.alpha;
  return j;
}

Json norm_json(const HolderNormReport& report) {
  Json j = Json::object();
  for (const auto& [key, value] : report.key_values()) j[key] = value;
  return j;
}

FixedPointOptions solve_options(const RunConfig& config, const Resolved& r) {
  FixedPointOptions o;
  o.delta = r.delta;
  o.dt = r.dt;
  o.tol = config.tol;
  o.max_iter = config.max_iter;
  o.alpha = config.alpha;
  o.max_halvings = config.max_halvings;
  o.residual_tol = config.residual_tol;
  o.holder.seed = config.seed;
  return o;
}

}  // namespace

Resolved resolve(const RunConfig& config) {
  Resolved r;
  try {
    r.card = &find_card(config.problem, config.dim);
  } catch (const InvalidArgument&) {
    throw ConfigError("unknown problem '" + config.problem + "' on T^" + std::to_string(config.dim));
  }
  r.grid_n = config.grid_n > 0 ? config.grid_n : r.card->defaults.n;
  r.dt = config.dt > 0 ? config.dt : r.card->defaults.dt;
  r.delta = config.delta > 0 ? config.delta : r.card->defaults.delta;
  r.order = config.order > 0 ? config.order : r.card->spec.order;
  return r;
}

int cmd_check_ellipticity(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Resolved r = resolve(config);
  const TorusGrid grid = r.grid();
  const EllipticityReport e =
      check_strong_ellipticity(linearize(r.card->spec, r.card->initial(grid), 0.0), 0.0);

  out << "problem " << r.card->name << " on T^" << r.card->dim << ", N = " << r.grid_n << '\n'
      << "lambda " << e.lambda << '\n'
      << "worst x (" << e.worst_x[0] << ", " << e.worst_x[1] << "), xi (" << e.worst_xi[0] << ", "
      << e.worst_xi[1] << ")\n"
      << (e.elliptic ? "strongly elliptic" : "NOT strongly elliptic") << '\n';

  Json j = header(config, r);
  j["lambda"] = e.lambda;
  j["elliptic"] = e.elliptic;
  j["worst_node"] = e.worst_node;
  j["worst_x"] = e.worst_x;
  j["worst_xi"] = e.worst_xi;
  j["worst_v"] = e.worst_v;
  j["xi_samples"] = e.xi_samples;
  j["v_samples"] = e.v_samples;
  if (r.card->analytic_lambda) j["analytic_lambda"] = *r.card->analytic_lambda;
  write_json(output_dir(config) / "ellipticity.json", j);
  return e.lambda > 0.0 ? kSuccess : kMathFailure;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve(config);
  const TorusGrid grid = r.grid();
  const auto dir = output_dir(config);
  Json summary = header(config, r);
  summary["dt"] = r.dt;
  summary["delta_init"] = r.delta;
  summary["tol"] = config.tol;

  std::optional<SolveResult> solved;
  try {
    solved = solve_nonlinear(r.card->spec, r.card->initial(grid), solve_options(config, r));
  } catch (const NotElliptic& e) {
    err << e.what() << '\n';
    summary["converged"] = false;
    summary["failure"] = e.what();
    write_json(dir / "summary.json", summary);
    return kMathFailure;
  } catch (const NoContractionHorizon& e) {
    err << e.what() << '\n';
    summary["converged"] = false;
    summary["failure"] = e.what();
    write_json(dir / "summary.json", summary);
    return kNoHorizon;
  }
  const SolveResult& result = *solved;

  write_trajectory_csv((dir / "trajectory.csv").string(), result.solution);
  write_trace_csv((dir / "trace.csv").string(), result.trace);

  summary["converged"] = true;
  summary["delta_final"] = result.trace.delta;
  summary["R"] = result.trace.radius;
  summary["halvings"] = result.trace.halvings;
  summary["iterations"] = result.iterations;
  summary["lambda"] = result.lambda;
  summary["residual"] = result.residual;
  summary["residual_tol"] = config.residual_tol;
  summary["residual_ok"] = result.residual_ok;
  if (r.card->exact) {
    const auto exact = SpaceTimeSection::sample(grid, result.solution.rank(),
                                                result.solution.times(), r.card->exact->value);
    summary["error_vs_exact"] = (exact - result.solution).sup_norm();
  }
  summary["norm"] = norm_json(result.norm);
  write_json(dir / "summary.json", summary);

  out << "problem " << r.card->name << ": converged on [0, " << result.trace.delta << "] in "
      << result.iterations << " iterations, residual " << result.residual;
  if (summary.contains("error_vs_exact")) out << ", error vs exact " << summary["error_vs_exact"].get<double>();
  out << '\n';
  if (!result.residual_ok) {
    err << "residual " << result.residual << " exceeds " << config.residual_tol << '\n';
    return kMathFailure;
  }
  return kSuccess;
}

int cmd_holder_norm(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.input.empty()) throw ConfigError("holder-norm needs --input <trajectory.csv>");
  SpaceTimeSection u = [&] {
    try {
      return read_trajectory_csv(config.input);
    } catch (const Error& e) {
      throw ConfigError(std::string("cannot read ") + config.input + ": " + e.what());
    }
  }();
  const int order = config.order > 0 ? config.order : 2;
  HolderOptions options;
  options.seed = config.seed;
  const HolderNormReport report = parabolic_holder_norm(u, order, HolderExponent(config.alpha), options);
  for (const auto& [key, value] : report.key_values()) out << key << ' ' << value << '\n';

  Json j;
  j["input"] = config.input;
  j["order"] = order;
  j["alpha"] = config.alpha;
  j["norm"] = norm_json(report);
  write_json(output_dir(config) / "holder_norm.json", j);
  return kSuccess;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::vector<std::string> suites;
  if (config.suite == "all") {
    suites = suite_names();
  } else {
    suites.push_back(config.suite);
  }
  for (const std::string& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }

  // independent suites run concurrently; rows are merged in suite order
  std::vector<std::future<std::vector<CheckRow>>> pending;
  for (const std::string& s : suites) {
    pending.push_back(std::async(std::launch::async, [s, config] { return run_suite(s, config); }));
  }
  std::vector<CheckRow> rows;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    try {
      for (CheckRow& row : pending[i].get()) rows.push_back(std::move(row));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      rows.push_back({suites[i], std::string("error: ") + e.what(), NAN, "", NAN, false});
    }
  }

  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-44s %14s %3s %12s  %s\n", "suite", "check", "value", "", "threshold", "verdict");
  out << line;
  bool all = true;
  for (const CheckRow& row : rows) {
    std::snprintf(line, sizeof line, "%-14s %-44s %14.6g %3s %12.4g  %s\n", row.suite.c_str(),
                  row.check.c_str(), row.value, row.relation.c_str(), row.threshold,
                  row.pass ? "pass" : "FAIL");
    out << line;
    all = all && row.pass;
  }

  Json j = Json::array();
  for (const CheckRow& row : rows) {
    j.push_back({{"suite", row.suite}, {"check", row.check}, {"value", row.value},
                 {"relation", row.relation}, {"threshold", row.threshold}, {"pass", row.pass}});
  }
  write_json(output_dir(config) / "verify.json", j);
  return all ? kSuccess : kMathFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point solver and diagnostics for nonlinear parabolic systems on flat tori"};
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("--config", config_file, "key = value file; flags override its keys");

  const std::vector<std::pair<std::string, std::string>> flags{
      {"problem", "problem card name"},
      {"n", "torus dimension (1 or 2)"},
      {"grid-n", "grid points per axis (even, >= 8)"},
      {"dt", "time step"},
      {"delta", "initial horizon"},
      {"alpha", "Hoelder exponent in (0, 1)"},
      {"tol", "fixed-point tolerance"},
      {"seed", "seed for sampled Hoelder pairs and random verification data"},
      {"out", "output directory"},
      {"suite", "verification suite"},
      {"input", "trajectory CSV for holder-norm"},
      {"order", "parabolic order r for holder-norm"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [name, help] : flags) options[name] = app.add_option("--" + name, values[name], help);

  auto* ellipticity = app.add_subcommand("check-ellipticity", "Legendre-Hadamard check of the linearization at u0");
  auto* solve = app.add_subcommand("solve", "Picard iteration to a short-time solution");
  auto* verify = app.add_subcommand("verify", "run verification suites and print a pass/fail table");
  auto* holder = app.add_subcommand("holder-norm", "parabolic Hoelder norm of a trajectory CSV");
  for (auto* sub : {ellipticity, solve, verify, holder}) sub->fallthrough();

  std::vector<std::string> storage(args);
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  RunConfig config;
  try {
    if (!config_file.empty()) {
      for (const auto& [key, value] : read_config_file(config_file)) apply_setting(config, key, value);
    }
    for (const auto& [name, help] : flags) {
      if (options[name]->count() > 0) apply_setting(config, name, values[name]);
    }
    validate(config);
    if (*ellipticity) return cmd_check_ellipticity(config, out, err);
    if (*solve) return cmd_solve(config, out, err);
    if (*verify) return cmd_verify(config, out, err);
    return cmd_holder_norm(config, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NotElliptic& e) {
    err << e.what() << '\n';
    return kMathFailure;
  } catch (const NoContractionHorizon& e) {
    err << e.what() << '\n';
    return kNoHorizon;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMathFailure;
  }
}

}  // namespace parabolic::cli
