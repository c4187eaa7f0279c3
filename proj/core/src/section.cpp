#include "parabolic/section.hpp"

#include <algorithm>
#include <cmath>

#include "parabolic/error.hpp"

namespace parabolic {

namespace {

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

GridSection::GridSection(TorusGrid grid, int rank)
    : grid_(grid), rank_(rank), values_(grid.size() * static_cast<std::size_t>(rank), 0.0) {
  if (rank < 1) throw InvalidArgument("section rank must be positive");
}

GridSection::GridSection(TorusGrid grid, int rank, std::vector<double> values)
    : grid_(grid), rank_(rank), values_(std::move(values)) {
  if (rank < 1) throw InvalidArgument("section rank must be positive");
  if (values_.size() != grid_.size() * static_cast<std::size_t>(rank_)) {
    throw InvalidArgument("section value count does not match grid and rank");
  }
}

GridSection GridSection::sample(const TorusGrid& grid, int rank, const SectionFn& fn, double t) {
  GridSection s(grid, rank);
  for (std::size_t node = 0; node < grid.size(); ++node) {
    fn(grid.position(node), t, s.values().subspan(node * rank, rank));
  }
  return s;
}

double GridSection::sup_norm() const { return sup_abs(values_); }
bool GridSection::all_finite() const { return finite(values_); }

GridSection& GridSection::operator+=(const GridSection& other) {
  if (other.values_.size() != values_.size()) throw InvalidArgument("section shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridSection& GridSection::operator-=(const GridSection& other) {
  if (other.values_.size() != values_.size()) throw InvalidArgument("section shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridSection& GridSection::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridSection operator+(GridSection a, const GridSection& b) { return a += b; }
GridSection operator-(GridSection a, const GridSection& b) { return a -= b; }
GridSection operator*(double s, GridSection a) { return a *= s; }

std::vector<double> uniform_times(double horizon, int steps) {
  if (!(horizon > 0.0) || steps < 1) {
    throw InvalidArgument("time grid needs a positive horizon and at least one step");
  }
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int m = 0; m <= steps; ++m) t[m] = horizon * m / steps;
  return t;
}

SpaceTimeSection::SpaceTimeSection(TorusGrid grid, int rank, std::vector<double> times)
    : grid_(grid), rank_(rank), times_(std::move(times)) {
  if (rank < 1) throw InvalidArgument("section rank must be positive");
  if (times_.empty()) throw InvalidArgument("space-time section needs at least one time level");
  for (std::size_t m = 1; m < times_.size(); ++m) {
    if (!(times_[m] > times_[m - 1])) throw InvalidArgument("time nodes must increase strictly");
  }
  values_.assign(times_.size() * grid_.size() * rank_, 0.0);
}

SpaceTimeSection SpaceTimeSection::constant_extension(const GridSection& u0,
                                                      std::vector<double> times) {
  SpaceTimeSection s(u0.grid(), u0.rank(), std::move(times));
  for (std::size_t m = 0; m < s.levels(); ++m) {
    std::copy(u0.values().begin(), u0.values().end(), s.level(m).begin());
  }
  return s;
}

SpaceTimeSection SpaceTimeSection::sample(const TorusGrid& grid, int rank,
                                          std::vector<double> times, const SectionFn& fn) {
  SpaceTimeSection s(grid, rank, std::move(times));
  for (std::size_t m = 0; m < s.levels(); ++m) {
    auto lvl = s.level(m);
    for (std::size_t node = 0; node < grid.size(); ++node) {
      fn(grid.position(node), s.times_[m], lvl.subspan(node * rank, rank));
    }
  }
  return s;
}

double SpaceTimeSection::time_step() const {
  if (times_.size() < 2) throw InvalidArgument("time step undefined for a single time level");
  return times_[1] - times_[0];
}

GridSection SpaceTimeSection::slice(std::size_t m) const {
  auto lvl = level(m);
  return GridSection(grid_, rank_, std::vector<double>(lvl.begin(), lvl.end()));
}

void SpaceTimeSection::set_slice(std::size_t m, const GridSection& s) {
  if (!(s.grid() == grid_) || s.rank() != rank_) throw InvalidArgument("slice shape mismatch");
  std::copy(s.values().begin(), s.values().end(), level(m).begin());
}

SpaceTimeSection SpaceTimeSection::leading(std::size_t count) const {
  if (count < 1 || count > times_.size()) throw InvalidArgument("invalid time level count");
  SpaceTimeSection out(grid_, rank_, std::vector<double>(times_.begin(), times_.begin() + count));
  std::copy(values_.begin(), values_.begin() + count * slice_size(), out.values_.begin());
  return out;
}

double SpaceTimeSection::sup_norm() const { return sup_abs(values_); }
bool SpaceTimeSection::all_finite() const { return finite(values_); }

bool SpaceTimeSection::same_shape(const SpaceTimeSection& other) const {
  return grid_ == other.grid_ && rank_ == other.rank_ && times_.size() == other.times_.size();
}

SpaceTimeSection& SpaceTimeSection::operator+=(const SpaceTimeSection& other) {
  if (!same_shape(other)) throw InvalidArgument("space-time section shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SpaceTimeSection& SpaceTimeSection::operator-=(const SpaceTimeSection& other) {
  if (!same_shape(other)) throw InvalidArgument("space-time section shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SpaceTimeSection& SpaceTimeSection::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

SpaceTimeSection operator+(SpaceTimeSection a, const SpaceTimeSection& b) { return a += b; }
SpaceTimeSection operator-(SpaceTimeSection a, const SpaceTimeSection& b) { return a -= b; }
SpaceTimeSection operator*(double s, SpaceTimeSection a) { return a *= s; }

}  // namespace parabolic
