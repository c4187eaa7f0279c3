#pragma once

#include <functional>
#include <span>
#include <vector>

#include "parabolic/holder.hpp"
#include "parabolic/linear_operator.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

/// f(t): writes one time slice (node-major, component-minor).
using SourceFn = std::function<void(double t, std::span<double> out)>;

/// Piecewise-linear interpolation in time; clamped outside the sampled range.
SourceFn source_from_section(const SpaceTimeSection& f);
SourceFn zero_source();
/// Samples a source at the given times.
SpaceTimeSection sample_source(const SourceFn& f, const TorusGrid& grid, int rank,
                               const std::vector<double>& times);

/// du/dt = L_t u + f, u(0) = u0 on [0, horizon], reported at `steps` + 1 uniform times.
struct LinearProblem {
  LinearOperatorSpec op;
  SourceFn source;
  GridSection u0;
  double horizon = 0.0;
  int steps = 0;
};

/// Automatic shift: 1.05 times the grid sup of the principal symbol's spectral
/// norm. The margin covers coefficient peaks that fall between nodes.
double auto_shift(const LinearOperatorSpec& op);

struct StepperConfig {
  /// Strength c of the Fourier-diagonal part c (-1)^{r/2-1} Delta^{r/2}; 0 means auto_shift.
  double shift = 0.0;
  /// Internal step; 0 means one step per output interval.
  double dt = 0.0;
  int max_halvings = 10;
  double blowup = 1e8;
  bool check_ellipticity = true;
};

struct LinearSolution {
  SpaceTimeSection u;
  /// sup |d_t u - L_t u - f| by centered differences at interior output times.
  double residual = 0.0;
  double dt = 0.0;
  double shift = 0.0;
  int halvings = 0;
};

/// du/dt = (-1)^{r/2-1} Delta^{r/2} u + f, integrated exactly per Fourier mode
/// for time-constant f (source frozen at the left end of each step).
SpaceTimeSection solve_principal(int order, const SourceFn& f, const GridSection& u0,
                                 double horizon, int steps);

/// Exponential Euler: c S is integrated exactly in Fourier space,
/// (L_t - c S) u + f is frozen over each step. Halves dt on blow-up.
LinearSolution solve_linear(const LinearProblem& problem, const StepperConfig& config = {});

/// sup over interior levels of |(u_{m+1} - u_{m-1}) / (t_{m+1} - t_{m-1}) - L u_m - f(t_m)|.
double linear_residual(const LinearOperatorSpec& op, const SourceFn& f, const SpaceTimeSection& u);

/// Spectral quantities, each scaled by the torus volume.
struct GardingCheck {
  double lhs = 0.0;           ///< sum |k|^r |psi_k|^2
  double sobolev_half = 0.0;  ///< sum (1 + |k|^2)^{r/2} |psi_k|^2
  double l2 = 0.0;            ///< sum |psi_k|^2
  bool holds(double constant) const;
};

GardingCheck check_garding(int order, const GridSection& psi);

/// Smallest C with |k|^r >= (1/2)(1 + |k|^2)^{r/2} - C over every |k|^2 = m, m <= kmax^2.
double garding_constant(int order, int kmax);

struct GronwallOptions {
  int order = 2;
  double alpha = 0.5;
  /// v(s) is evaluated at the output times that are multiples of this spacing.
  double spacing = 0.01;
  HolderOptions holder;
};

struct GronwallReport {
  std::vector<double> s;
  std::vector<double> v;
  std::vector<double> source_norm;
  double max_v = 0.0;
  /// max_s v(s) / ||f||^2_{C^{a,a/r}(E_s)}
  double constant = 0.0;
  /// v(s) <= s^2 vol sup_{E_s} |d_t u|^2 at every sampled s.
  bool intermediate_bound = true;
};

/// Requires u(., 0) = 0 to 1e-10.
GronwallReport gronwall_check(const SpaceTimeSection& u, const SpaceTimeSection& f,
                              const GronwallOptions& options = {});

/// ||u|| / (||f|| + ||u0||) with the discrete Hoelder norms; 0 when everything vanishes.
/// Throws ResidualTooLarge if the solution residual exceeds `residual_limit`.
double schauder_ratio(const LinearProblem& problem, const LinearSolution& solution,
                      HolderExponent alpha, const HolderOptions& options = {},
                      double residual_limit = 1e-3);

}  // namespace parabolic
