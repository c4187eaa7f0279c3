#pragma once

#include <array>
#include <string>
#include <vector>

namespace parabolic {

/// Canonical spatial multi-index, stored as derivative counts per axis.
///
/// Mixed partials commute on smooth grid functions, so the sorted direction
/// list (i1 <= i2 <= ...) is determined by these counts. Only n <= 2 is
/// supported.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(int along_x, int along_y = 0) : counts_{along_x, along_y} {}

  /// Builds the canonical form of an arbitrary (unsorted) list of 0-based axes.
  static MultiIndex from_axes(const std::vector<int>& axes);

  constexpr int order() const { return counts_[0] + counts_[1]; }
  constexpr int count(int axis) const { return counts_[axis]; }

  /// Sorted 0-based axis list, e.g. u_xxy -> {0, 0, 1}.
  std::vector<int> axes() const;

  /// Product xi_I = xi_{i1} ... xi_{ij}.
  double monomial(const std::array<double, 2>& xi) const;

  /// "u", "x", "xx", "xy", ...
  std::string label() const;

  constexpr bool operator==(const MultiIndex&) const = default;

 private:
  std::array<int, 2> counts_{0, 0};
};

/// All canonical multi-indices of length <= max_order, ordered by length and,
/// within a length, by decreasing x-count.
std::vector<MultiIndex> canonical_indices(int dim, int max_order);

/// Number of canonical multi-indices of length exactly `order`.
int canonical_count(int dim, int order);

}  // namespace parabolic
