#include "parabolic/linear_operator.hpp"

#include <algorithm>
#include <cmath>

#include "parabolic/error.hpp"

namespace parabolic {

LinearOperatorSpec::LinearOperatorSpec(TorusGrid grid, JetLayout layout)
    : grid_(grid), layout_(std::move(layout)) {
  if (layout_.dim() != grid_.dim()) {
    throw InvalidArgument("operator layout and grid dimension differ");
  }
  slice_times_.push_back(0.0);
  slices_.emplace_back(grid_.size() * stride(), 0.0);
}

std::size_t LinearOperatorSpec::slice_at(double t) const {
  auto it = std::upper_bound(slice_times_.begin(), slice_times_.end(), t);
  if (it == slice_times_.begin()) return 0;
  return static_cast<std::size_t>(it - slice_times_.begin()) - 1;
}

void LinearOperatorSpec::add_slice(double t) {
  if (!(t > slice_times_.back())) throw InvalidArgument("slice times must increase");
  slice_times_.push_back(t);
  slices_.push_back(slices_.back());
}

std::span<double> LinearOperatorSpec::node_matrix(std::size_t slice, std::size_t node) {
  return std::span<double>(slices_[slice]).subspan(node * stride(), stride());
}

std::span<const double> LinearOperatorSpec::node_matrix(std::size_t slice,
                                                        std::size_t node) const {
  return std::span<const double>(slices_[slice]).subspan(node * stride(), stride());
}

double& LinearOperatorSpec::coefficient(std::size_t slice, std::size_t node, int a, int b,
                                        const MultiIndex& index) {
  return node_matrix(slice, node)[a * layout_.size() + layout_.component(index, b)];
}

double LinearOperatorSpec::coefficient(std::size_t slice, std::size_t node, int a, int b,
                                       const MultiIndex& index) const {
  return node_matrix(slice, node)[a * layout_.size() + layout_.component(index, b)];
}

void LinearOperatorSpec::set_constant(const MultiIndex& index, const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != rank() || matrix.cols() != rank()) {
    throw InvalidArgument("coefficient matrix must be rank x rank");
  }
  for (std::size_t s = 0; s < slice_count(); ++s) {
    for (std::size_t node = 0; node < grid_.size(); ++node) {
      for (int a = 0; a < rank(); ++a) {
        for (int b = 0; b < rank(); ++b) coefficient(s, node, a, b, index) = matrix(a, b);
      }
    }
  }
}

void LinearOperatorSpec::set_field(const MultiIndex& index, int a, int b,
                                   const std::function<double(const std::array<double, 2>&)>& fn) {
  for (std::size_t s = 0; s < slice_count(); ++s) {
    for (std::size_t node = 0; node < grid_.size(); ++node) {
      coefficient(s, node, a, b, index) = fn(grid_.position(node));
    }
  }
}

GridSection LinearOperatorSpec::apply(const GridSection& u, double t) const {
  if (u.rank() != rank() || !(u.grid() == grid_)) {
    throw InvalidArgument("operator applied to a section of the wrong shape");
  }
  return apply(spectral_jet(u, order()), t);
}

GridSection LinearOperatorSpec::apply(const JetField& jets, double t) const {
  if (!(jets.layout() == layout_)) throw InvalidArgument("jet layout does not match operator");
  const std::size_t slice = slice_at(t);
  const std::size_t width = layout_.size();
  GridSection out(grid_, rank());
  for (std::size_t node = 0; node < grid_.size(); ++node) {
    auto m = node_matrix(slice, node);
    auto z = jets.at(node);
    for (int a = 0; a < rank(); ++a) {
      double acc = 0.0;
      const double* row = m.data() + a * width;
      for (std::size_t c = 0; c < width; ++c) acc += row[c] * z[c];
      out(node, a) = acc;
    }
  }
  return out;
}

bool LinearOperatorSpec::all_finite() const {
  for (const auto& s : slices_) {
    if (!std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); })) return false;
  }
  return true;
}

Eigen::MatrixXd principal_symbol(const LinearOperatorSpec& op, std::size_t node, double t,
                                 const std::array<double, 2>& xi) {
  if (xi[0] == 0.0 && xi[1] == 0.0) throw InvalidArgument("principal symbol needs xi != 0");
  const JetLayout& layout = op.layout();
  const int l = op.rank();
  const std::size_t slice = op.slice_at(t);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(l, l);
  const auto range = layout.slots_of_order(op.order());
  for (std::size_t s = range[0]; s < range[1]; ++s) {
    const MultiIndex& index = layout.indices()[s];
    const double w = index.monomial(xi);
    for (int a = 0; a < l; ++a) {
      for (int b = 0; b < l; ++b) sigma(a, b) += op.coefficient(slice, node, a, b, index) * w;
    }
  }
  return sigma;
}

}  // namespace parabolic
