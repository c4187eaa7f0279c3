#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "parabolic/grid.hpp"

namespace parabolic {

/// Closed-form field (x, t) -> R^l, used for exact solutions and test data.
using SectionFn =
    std::function<void(const std::array<double, 2>& x, double t, std::span<double> out)>;

/// Values of a rank-l section on a torus grid; node-major, component-minor.
class GridSection {
 public:
  GridSection(TorusGrid grid, int rank);
  GridSection(TorusGrid grid, int rank, std::vector<double> values);

  static GridSection sample(const TorusGrid& grid, int rank, const SectionFn& fn, double t = 0.0);

  const TorusGrid& grid() const { return grid_; }
  int rank() const { return rank_; }

  double& operator()(std::size_t node, int component) { return values_[node * rank_ + component]; }
  double operator()(std::size_t node, int component) const {
    return values_[node * rank_ + component];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double sup_norm() const;
  bool all_finite() const;

  GridSection& operator+=(const GridSection& other);
  GridSection& operator-=(const GridSection& other);
  GridSection& operator*=(double s);

 private:
  TorusGrid grid_;
  int rank_;
  std::vector<double> values_;
};

GridSection operator+(GridSection a, const GridSection& b);
GridSection operator-(GridSection a, const GridSection& b);
GridSection operator*(double s, GridSection a);

/// Uniform time nodes t_m = m * horizon / steps, m = 0..steps.
std::vector<double> uniform_times(double horizon, int steps);

/// A section sampled on grid x uniform time nodes; indexed (time, node, component).
class SpaceTimeSection {
 public:
  SpaceTimeSection(TorusGrid grid, int rank, std::vector<double> times);

  /// u0 repeated at every time node.
  static SpaceTimeSection constant_extension(const GridSection& u0, std::vector<double> times);
  static SpaceTimeSection sample(const TorusGrid& grid, int rank, std::vector<double> times,
                                 const SectionFn& fn);

  const TorusGrid& grid() const { return grid_; }
  int rank() const { return rank_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t levels() const { return times_.size(); }
  double horizon() const { return times_.back(); }
  double time_step() const;
  std::size_t slice_size() const { return grid_.size() * rank_; }

  double& operator()(std::size_t level, std::size_t node, int component) {
    return values_[(level * grid_.size() + node) * rank_ + component];
  }
  double operator()(std::size_t level, std::size_t node, int component) const {
    return values_[(level * grid_.size() + node) * rank_ + component];
  }

  std::span<double> level(std::size_t m) {
    return std::span<double>(values_).subspan(m * slice_size(), slice_size());
  }
  std::span<const double> level(std::size_t m) const {
    return std::span<const double>(values_).subspan(m * slice_size(), slice_size());
  }
  GridSection slice(std::size_t m) const;
  void set_slice(std::size_t m, const GridSection& s);

  /// The first `count` time levels.
  SpaceTimeSection leading(std::size_t count) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double sup_norm() const;
  bool all_finite() const;
  bool same_shape(const SpaceTimeSection& other) const;

  SpaceTimeSection& operator+=(const SpaceTimeSection& other);
  SpaceTimeSection& operator-=(const SpaceTimeSection& other);
  SpaceTimeSection& operator*=(double s);

 private:
  TorusGrid grid_;
  int rank_;
  std::vector<double> times_;
  std::vector<double> values_;
};

SpaceTimeSection operator+(SpaceTimeSection a, const SpaceTimeSection& b);
SpaceTimeSection operator-(SpaceTimeSection a, const SpaceTimeSection& b);
SpaceTimeSection operator*(double s, SpaceTimeSection a);

}  // namespace parabolic
