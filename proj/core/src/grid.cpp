#include "parabolic/grid.hpp"

#include <cmath>
#include <sstream>

#include "parabolic/error.hpp"

namespace parabolic {

TubeViolation::TubeViolation(std::size_t worst_node, double distance, double radius)
    : Error([&] {
        std::ostringstream os;
        os << "tube-violation: jet distance " << distance << " exceeds R0 = " << radius
           << " (worst node " << worst_node << ")";
        return os.str();
      }()),
      worst_node_(worst_node),
      distance_(distance),
      radius_(radius) {}

InstabilityError::InstabilityError(double dt)
    : Error("instability: linear stepper blew up at dt = " + std::to_string(dt)), dt_(dt) {}

NotElliptic::NotElliptic(double lambda)
    : Error("operator is not strongly elliptic (lambda = " + std::to_string(lambda) + ")"),
      lambda_(lambda) {}

ResidualTooLarge::ResidualTooLarge(double residual, double limit)
    : Error("residual " + std::to_string(residual) + " exceeds " + std::to_string(limit)),
      residual_(residual) {}

TorusGrid::TorusGrid(int dim, int points_per_dim) : dim_(dim), n_(points_per_dim) {
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("torus dimension must be 1 or 2");
  }
  if (points_per_dim < 8 || points_per_dim % 2 != 0) {
    throw InvalidArgument("points per dimension must be even and >= 8");
  }
  size_ = dim == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * n_;
}

double TorusGrid::volume() const { return dim_ == 1 ? kPeriod : kPeriod * kPeriod; }

std::array<int, 2> TorusGrid::coords(std::size_t node) const {
  return {static_cast<int>(node % n_), static_cast<int>(node / n_)};
}

std::size_t TorusGrid::index(int ix, int iy) const {
  ix = ((ix % n_) + n_) % n_;
  iy = dim_ == 1 ? 0 : ((iy % n_) + n_) % n_;
  return static_cast<std::size_t>(ix) + static_cast<std::size_t>(n_) * iy;
}

std::array<double, 2> TorusGrid::position(std::size_t node) const {
  const auto c = coords(node);
  return {c[0] * spacing(), dim_ == 1 ? 0.0 : c[1] * spacing()};
}

std::size_t TorusGrid::shifted(std::size_t node, int axis, int steps) const {
  auto c = coords(node);
  c[axis] += steps;
  return index(c[0], c[1]);
}

double TorusGrid::distance(std::size_t a, std::size_t b) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  double sum = 0.0;
  for (int axis = 0; axis < dim_; ++axis) {
    int d = std::abs(ca[axis] - cb[axis]);
    d = std::min(d, n_ - d);
    const double g = d * spacing();
    sum += g * g;
  }
  return std::sqrt(sum);
}

double periodic_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), TorusGrid::kPeriod);
  return std::min(d, TorusGrid::kPeriod - d);
}

}  // namespace parabolic
