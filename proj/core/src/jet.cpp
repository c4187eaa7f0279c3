#include "parabolic/jet.hpp"

#include <algorithm>
#include <cmath>

#include "parabolic/error.hpp"
#include "parabolic/fourier.hpp"

namespace parabolic {

MultiIndex MultiIndex::from_axes(const std::vector<int>& axes) {
  int counts[2] = {0, 0};
  for (int a : axes) {
    if (a < 0 || a > 1) throw InvalidArgument("multi-index axis out of range");
    ++counts[a];
  }
  return MultiIndex(counts[0], counts[1]);
}

std::vector<int> MultiIndex::axes() const {
  std::vector<int> out(counts_[0], 0);
  out.insert(out.end(), counts_[1], 1);
  return out;
}

double MultiIndex::monomial(const std::array<double, 2>& xi) const {
  return std::pow(xi[0], counts_[0]) * std::pow(xi[1], counts_[1]);
}

std::string MultiIndex::label() const {
  if (order() == 0) return "u";
  return std::string(counts_[0], 'x') + std::string(counts_[1], 'y');
}

int canonical_count(int dim, int order) { return dim == 1 ? 1 : order + 1; }

std::vector<MultiIndex> canonical_indices(int dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= max_order; ++j) {
    if (dim == 1) {
      out.emplace_back(j, 0);
    } else {
      for (int y = 0; y <= j; ++y) out.emplace_back(j - y, y);
    }
  }
  return out;
}

JetLayout::JetLayout(int dim, int rank, int order)
    : dim_(dim), rank_(rank), order_(order), indices_(canonical_indices(dim, order)) {
  if (dim != 1 && dim != 2) throw InvalidArgument("jet dimension must be 1 or 2");
  if (rank < 1) throw InvalidArgument("jet rank must be positive");
  if (order < 0) throw InvalidArgument("jet order must be non-negative");
}

std::size_t JetLayout::slot(const MultiIndex& index) const {
  const int j = index.order();
  if (j > order_ || (dim_ == 1 && index.count(1) != 0)) {
    throw InvalidArgument("multi-index " + index.label() + " not in jet layout");
  }
  if (dim_ == 1) return static_cast<std::size_t>(j);
  return static_cast<std::size_t>(j * (j + 1) / 2 + index.count(1));
}

std::array<std::size_t, 2> JetLayout::slots_of_order(int j) const {
  if (dim_ == 1) return {static_cast<std::size_t>(j), static_cast<std::size_t>(j) + 1};
  const auto first = static_cast<std::size_t>(j * (j + 1) / 2);
  return {first, first + static_cast<std::size_t>(j) + 1};
}

JetField::JetField(TorusGrid grid, JetLayout layout)
    : grid_(grid), layout_(std::move(layout)), data_(grid_.size() * layout_.size(), 0.0) {
  if (layout_.dim() != grid_.dim()) throw InvalidArgument("jet layout and grid dimension differ");
}

JetField spectral_jet(const GridSection& section, int order) {
  if (!section.all_finite()) {
    throw InvalidArgument("spectral_jet: section contains non-finite values");
  }
  const TorusGrid& grid = section.grid();
  const int rank = section.rank();
  JetField field(grid, JetLayout(grid.dim(), rank, order));
  const JetLayout& layout = field.layout();
  auto& ft = fourier_for(grid);

  Spectrum base;
  Spectrum work;
  std::vector<double> scratch(grid.size());
  for (int b = 0; b < rank; ++b) {
    ft.forward(section.values(), rank, b, base);
    for (std::size_t s = 0; s < layout.slot_count(); ++s) {
      const MultiIndex& index = layout.indices()[s];
      if (index.order() == 0) {
        for (std::size_t node = 0; node < grid.size(); ++node) {
          field.at(node)[b] = section(node, b);
        }
        continue;
      }
      work = base;
      for (std::size_t j = 0; j < work.size(); ++j) {
        work[j] *= derivative_multiplier(grid, j, index);
      }
      ft.backward(work, scratch, 1, 0);
      const std::size_t c = s * rank + b;
      for (std::size_t node = 0; node < grid.size(); ++node) {
        field.at(node)[c] = scratch[node];
      }
    }
  }
  return field;
}

std::vector<double> order_deviation(const JetField& jets, const JetField& center) {
  const JetLayout& layout = jets.layout();
  if (!(layout == center.layout()) || !(jets.grid() == center.grid())) {
    throw InvalidArgument("jet fields have different shapes");
  }
  std::vector<double> dev(layout.order() + 1, 0.0);
  for (std::size_t node = 0; node < jets.grid().size(); ++node) {
    auto a = jets.at(node);
    auto c = center.at(node);
    for (int j = 0; j <= layout.order(); ++j) {
      const auto range = layout.slots_of_order(j);
      for (std::size_t k = range[0] * layout.rank(); k < range[1] * layout.rank(); ++k) {
        dev[j] = std::max(dev[j], std::abs(a[k] - c[k]));
      }
    }
  }
  return dev;
}

std::pair<std::size_t, double> worst_node(const JetField& jets, const JetField& center) {
  const JetLayout& layout = jets.layout();
  std::size_t worst = 0;
  double worst_sum = -1.0;
  for (std::size_t node = 0; node < jets.grid().size(); ++node) {
    auto a = jets.at(node);
    auto c = center.at(node);
    double sum = 0.0;
    for (int j = 0; j <= layout.order(); ++j) {
      const auto range = layout.slots_of_order(j);
      double m = 0.0;
      for (std::size_t k = range[0] * layout.rank(); k < range[1] * layout.rank(); ++k) {
        m = std::max(m, std::abs(a[k] - c[k]));
      }
      sum += m;
    }
    if (sum > worst_sum) {
      worst_sum = sum;
      worst = node;
    }
  }
  return {worst, worst_sum};
}

}  // namespace parabolic
