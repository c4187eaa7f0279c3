#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "parabolic/grid.hpp"
#include "parabolic/jet.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

/// Linear differential operator (L_t u)^a = sum_{I, b} A_b^{aI}(x, t) d_I u^b.
///
/// At every node the coefficients form an l x (jet size) matrix whose column
/// (slot(I) * l + b) holds A_b^{aI}; this is exactly the Jacobian of a
/// nonlinear F with respect to its jet arguments. Time dependence is
/// piecewise constant across "slices": slice i is active on
/// [slice_time(i), slice_time(i + 1)).
class LinearOperatorSpec {
 public:
  LinearOperatorSpec(TorusGrid grid, JetLayout layout);

  const TorusGrid& grid() const { return grid_; }
  const JetLayout& layout() const { return layout_; }
  int order() const { return layout_.order(); }
  int rank() const { return layout_.rank(); }

  std::size_t slice_count() const { return slice_times_.size(); }
  double slice_time(std::size_t slice) const { return slice_times_[slice]; }
  std::size_t slice_at(double t) const;
  /// Appends a slice starting at time t, initialized from the last slice.
  void add_slice(double t);

  std::span<double> node_matrix(std::size_t slice, std::size_t node);
  std::span<const double> node_matrix(std::size_t slice, std::size_t node) const;

  double& coefficient(std::size_t slice, std::size_t node, int a, int b, const MultiIndex& index);
  double coefficient(std::size_t slice, std::size_t node, int a, int b,
                     const MultiIndex& index) const;

  /// Sets A^I to the same l x l matrix at every node and slice.
  void set_constant(const MultiIndex& index, const Eigen::MatrixXd& matrix);
  /// Sets the scalar entry A_b^{aI}(x) from a function of position, on every slice.
  void set_field(const MultiIndex& index, int a, int b,
                 const std::function<double(const std::array<double, 2>&)>& fn);

  GridSection apply(const GridSection& u, double t) const;
  GridSection apply(const JetField& jets, double t) const;

  bool all_finite() const;

 private:
  std::size_t stride() const { return static_cast<std::size_t>(rank()) * layout_.size(); }

  TorusGrid grid_;
  JetLayout layout_;
  std::vector<double> slice_times_;
  std::vector<std::vector<double>> slices_;
};

/// sigma(x, xi) = sum_{|I| = r} A^I(x, t) xi_I, an l x l matrix. Throws on xi = 0.
Eigen::MatrixXd principal_symbol(const LinearOperatorSpec& op, std::size_t node, double t,
                                 const std::array<double, 2>& xi);

}  // namespace parabolic
