#include "parabolic/csv.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "parabolic/error.hpp"

namespace parabolic {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const SpaceTimeSection& u) {
  const TorusGrid& grid = u.grid();
  out << "t,x";
  if (grid.dim() == 2) out << ",y";
  for (int b = 0; b < u.rank(); ++b) out << ",u_" << (b + 1);
  out << '\n' << std::setprecision(17);
  for (std::size_t m = 0; m < u.levels(); ++m) {
    for (std::size_t node = 0; node < grid.size(); ++node) {
      const auto x = grid.position(node);
      out << u.times()[m] << ',' << x[0];
      if (grid.dim() == 2) out << ',' << x[1];
      for (int b = 0; b < u.rank(); ++b) out << ',' << u(m, node, b);
      out << '\n';
    }
  }
}

void write_trajectory_csv(const std::string& path, const SpaceTimeSection& u) {
  std::ofstream out = open_out(path);
  write_trajectory_csv(out, u);
}

SpaceTimeSection read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("trajectory file is empty");
  const std::vector<std::string> header = split(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "x") {
    throw InvalidArgument("trajectory header must start with t,x");
  }
  const int dim = header[2] == "y" ? 2 : 1;
  const int rank = static_cast<int>(header.size()) - 1 - dim;
  if (rank < 1) throw InvalidArgument("trajectory has no value columns");

  std::vector<double> times;
  std::vector<double> values;
  std::size_t rows_in_level = 0, rows_per_level = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) throw InvalidArgument("trajectory row has wrong width");
    double t;
    try {
      t = std::stod(cells[0]);
      for (int b = 0; b < rank; ++b) values.push_back(std::stod(cells[1 + dim + b]));
    } catch (const std::exception&) {
      throw InvalidArgument("trajectory row is not numeric: " + line);
    }
    if (times.empty() || t != times.back()) {
      if (!times.empty()) {
        if (rows_per_level == 0) rows_per_level = rows_in_level;
        if (rows_in_level != rows_per_level) throw InvalidArgument("ragged trajectory levels");
      }
      times.push_back(t);
      rows_in_level = 0;
    }
    ++rows_in_level;
  }
  if (times.empty()) throw InvalidArgument("trajectory has no rows");
  if (rows_per_level == 0) rows_per_level = rows_in_level;
  if (rows_in_level != rows_per_level) throw InvalidArgument("ragged trajectory levels");
  const int n = dim == 1 ? static_cast<int>(rows_per_level)
                         : static_cast<int>(std::lround(std::sqrt(rows_per_level)));
  const TorusGrid grid(dim, n);
  if (grid.size() != rows_per_level) throw InvalidArgument("trajectory rows do not form a grid");
  SpaceTimeSection u(grid, rank, times);
  std::copy(values.begin(), values.end(), u.values().begin());
  return u;
}

SpaceTimeSection read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return read_trajectory_csv(in);
}

void write_trace_csv(std::ostream& out, const ContractionTrace& trace) {
  out << "iter,distance,factor,cond31,cond33,cond37,delta\n" << std::setprecision(17);
  for (const IterationRecord& r : trace.records) {
    out << r.iter << ',' << r.distance << ',' << r.factor << ',' << int(r.cond31) << ','
        << int(r.cond33) << ',' << int(r.cond37) << ',' << r.delta << '\n';
  }
}

void write_trace_csv(const std::string& path, const ContractionTrace& trace) {
  std::ofstream out = open_out(path);
  write_trace_csv(out, trace);
}

}  // namespace parabolic
