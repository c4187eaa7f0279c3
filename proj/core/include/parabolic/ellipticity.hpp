#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "parabolic/linear_operator.hpp"

namespace parabolic {

/// Estimated Legendre-Hadamard constant of a linear operator.
struct EllipticityReport {
  double lambda = 0.0;
  std::size_t worst_node = 0;
  std::array<double, 2> worst_x{0.0, 0.0};
  std::array<double, 2> worst_xi{1.0, 0.0};
  std::vector<double> worst_v;
  int xi_samples = 0;
  /// Fiber vectors are never sampled: the minimum over unit v of <sigma v, v>
  /// is the smallest eigenvalue of the symmetrized symbol, computed exactly.
  int v_samples = 0;
  bool elliptic = false;
};

/// Unit covectors used for the xi-minimization. On T^1 this is {1} (the
/// symbol is even in xi). On T^2 the angles pi k / n_xi, k < n_xi, are used,
/// so doubling n_xi refines the previous set.
std::vector<std::array<double, 2>> unit_covectors(int dim, int n_xi);

/// lambda = min over nodes, unit xi, unit v of (-1)^{r/2-1} <sigma(x, xi) v, v>.
EllipticityReport check_strong_ellipticity(const LinearOperatorSpec& op, double t, int n_xi = 64,
                                           int n_v = 0);

/// sup over nodes, slices and unit xi of the spectral norm of sigma(x, xi).
double top_symbol_bound(const LinearOperatorSpec& op, int n_xi = 64);

}  // namespace parabolic
