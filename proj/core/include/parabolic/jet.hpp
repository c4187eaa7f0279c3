#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "parabolic/grid.hpp"
#include "parabolic/multi_index.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

/// Component layout of an order-r jet of a rank-l section over T^n.
///
/// Components are grouped by canonical multi-index ("slot") and, within a
/// slot, by bundle component: component(slot, b) = slot * rank + b.
class JetLayout {
 public:
  JetLayout(int dim, int rank, int order);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  int order() const { return order_; }

  const std::vector<MultiIndex>& indices() const { return indices_; }
  std::size_t slot_count() const { return indices_.size(); }
  std::size_t size() const { return indices_.size() * rank_; }

  std::size_t slot(const MultiIndex& index) const;
  std::size_t component(const MultiIndex& index, int b) const { return slot(index) * rank_ + b; }

  /// Half-open slot range [first, last) of multi-indices with |I| = j.
  std::array<std::size_t, 2> slots_of_order(int j) const;

  bool operator==(const JetLayout& other) const {
    return dim_ == other.dim_ && rank_ == other.rank_ && order_ == other.order_;
  }

 private:
  int dim_;
  int rank_;
  int order_;
  std::vector<MultiIndex> indices_;
};

/// Non-owning view of the jet j_r(u) at one point: (x, t, u, du, ..., d^r u).
class Jet {
 public:
  Jet(const JetLayout& layout, std::array<double, 2> x, double t, std::span<const double> values)
      : layout_(&layout), x_(x), t_(t), values_(values) {}

  const JetLayout& layout() const { return *layout_; }
  const std::array<double, 2>& x() const { return x_; }
  double t() const { return t_; }
  std::span<const double> values() const { return values_; }

  double operator[](std::size_t c) const { return values_[c]; }
  double value(int b = 0) const { return values_[b]; }
  double derivative(const MultiIndex& index, int b = 0) const {
    return values_[layout_->component(index, b)];
  }

 private:
  const JetLayout* layout_;
  std::array<double, 2> x_;
  double t_;
  std::span<const double> values_;
};

/// Jets at every node of a grid; node-major.
class JetField {
 public:
  JetField(TorusGrid grid, JetLayout layout);

  const TorusGrid& grid() const { return grid_; }
  const JetLayout& layout() const { return layout_; }

  std::span<double> at(std::size_t node) {
    return std::span<double>(data_).subspan(node * layout_.size(), layout_.size());
  }
  std::span<const double> at(std::size_t node) const {
    return std::span<const double>(data_).subspan(node * layout_.size(), layout_.size());
  }
  Jet jet(std::size_t node, double t) const {
    return Jet(layout_, grid_.position(node), t, at(node));
  }

 private:
  TorusGrid grid_;
  JetLayout layout_;
  std::vector<double> data_;
};

/// All canonical spatial derivatives up to `order`, by Fourier differentiation.
JetField spectral_jet(const GridSection& section, int order);

/// Per-order sup deviation sup_x |d^j u - d^j u0| (max over slots and components).
std::vector<double> order_deviation(const JetField& jets, const JetField& center);

/// Node maximizing sum_j max_{|I|=j, b} |d_I u^b - d_I u0^b|, with that sum.
std::pair<std::size_t, double> worst_node(const JetField& jets, const JetField& center);

}  // namespace parabolic
