#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "parabolic/problems.hpp"
#include "run_config.hpp"

namespace parabolic::cli {

/// A config with the card looked up and card defaults filled in.
struct Resolved {
  const ProblemCard* card = nullptr;
  int grid_n = 0;
  double dt = 0.0;
  double delta = 0.0;
  int order = 2;
  TorusGrid grid() const { return TorusGrid(card->dim, grid_n); }
};

/// Throws ConfigError for an unknown (problem, n) pair.
Resolved resolve(const RunConfig& config);

int cmd_check_ellipticity(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_holder_norm(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckRow {
  std::string suite;
  std::string check;
  double value = 0.0;
  std::string relation;  ///< "<=", ">=", "<", ">", "=="
  double threshold = 0.0;
  bool pass = false;
};

const std::vector<std::string>& suite_names();

/// Rows of one suite ("all" is not accepted here). Throws ConfigError for unknown names.
std::vector<CheckRow> run_suite(const std::string& suite, const RunConfig& config);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parabolic::cli
