#pragma once

#include <iosfwd>
#include <string>

#include "parabolic/fixed_point.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

/// One row per (time, node): t, x[, y], u_1..u_l; header row first.
void write_trajectory_csv(std::ostream& out, const SpaceTimeSection& u);
void write_trajectory_csv(const std::string& path, const SpaceTimeSection& u);

/// Reads a file produced by write_trajectory_csv. N is inferred from the rows per time level.
SpaceTimeSection read_trajectory_csv(std::istream& in);
SpaceTimeSection read_trajectory_csv(const std::string& path);

/// iter, distance, factor, cond31, cond33, cond37, delta
void write_trace_csv(std::ostream& out, const ContractionTrace& trace);
void write_trace_csv(const std::string& path, const ContractionTrace& trace);

}  // namespace parabolic
