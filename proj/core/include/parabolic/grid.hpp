#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace parabolic {

/// Uniform grid on the flat torus T^n = (R / 2 pi Z)^n, n in {1, 2}.
///
/// Nodes are x_j = 2 pi j / N in every direction. Node indices are
/// x-fastest: idx = ix + N * iy.
class TorusGrid {
 public:
  static constexpr double kPeriod = 2.0 * std::numbers::pi;

  TorusGrid(int dim, int points_per_dim);

  int dim() const { return dim_; }
  int points_per_dim() const { return n_; }
  std::size_t size() const { return size_; }
  double spacing() const { return kPeriod / n_; }
  double volume() const;

  std::array<int, 2> coords(std::size_t node) const;
  std::size_t index(int ix, int iy = 0) const;
  std::array<double, 2> position(std::size_t node) const;

  /// Node reached from `node` by moving `steps` grid points along `axis`.
  std::size_t shifted(std::size_t node, int axis, int steps) const;

  /// Euclidean distance with periodic wrap in every direction.
  double distance(std::size_t a, std::size_t b) const;

  /// Signed integer wavenumber of FFT bin j, in (-N/2, N/2].
  int wavenumber(int j) const { return j <= n_ / 2 ? j : j - n_; }

  bool operator==(const TorusGrid&) const = default;

 private:
  int dim_;
  int n_;
  std::size_t size_;
};

/// Shortest signed separation of two angles on the circle, in [0, pi].
double periodic_gap(double a, double b);

}  // namespace parabolic
