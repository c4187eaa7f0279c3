#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "parabolic/holder.hpp"
#include "parabolic/linear_solver.hpp"
#include "parabolic/nonlinear_operator.hpp"

namespace parabolic {

/// Y = { u : u(., 0) = u0, ||u - u0|| <= R } on [0, delta], inside the tube of radius R0.
struct BallSpec {
  GridSection u0;
  double radius = 0.0;
  double delta = 0.0;
  double tube_radius = 0.0;
};

/// Additive start or test perturbation p(x, t; delta); must vanish at t = 0.
using Perturbation =
    std::function<void(const std::array<double, 2>& x, double t, double delta, std::span<double> out)>;

/// u0 extended constantly in time, plus an optional perturbation.
SpaceTimeSection ball_member(const GridSection& u0, const std::vector<double>& times,
                             const Perturbation& perturbation = {});

struct Membership {
  double initial_gap = 0.0;  ///< sup |u(., 0) - u0|
  double distance = 0.0;     ///< ||u - u0|| in the parabolic norm
  bool inside = false;
};

Membership ball_membership(const BallSpec& ball, const SpaceTimeSection& u, int order,
                           HolderExponent alpha, const HolderOptions& options = {});

/// G(u) = w with dw/dt = L0 w + F(u) - L0 u, w(0) = u0, where L0 is the
/// linearization of F at (u0, t = 0).
class ContractionMap {
 public:
  /// Throws NotElliptic if L0 fails the Legendre-Hadamard check.
  ContractionMap(const NonlinearOperatorSpec& spec, const GridSection& u0,
                 std::vector<double> times);

  struct Evaluation {
    SpaceTimeSection image;
    /// sup over levels of the jet distance of the input from the u0 jets.
    double tube_distance = 0.0;
    /// sup |d_t u - P_t(u)| of the input at interior levels.
    double input_residual = 0.0;
  };

  /// Throws TubeViolation if some level of u leaves the tube.
  Evaluation evaluate(const SpaceTimeSection& u) const;
  SpaceTimeSection operator()(const SpaceTimeSection& u) const { return evaluate(u).image; }

  const NonlinearOperatorSpec& spec() const { return spec_; }
  const GridSection& initial() const { return u0_; }
  const std::vector<double>& times() const { return times_; }
  const LinearOperatorSpec& frozen() const { return frozen_; }
  const Tube& tube() const { return tube_; }
  double shift() const { return shift_; }
  double lambda() const { return lambda_; }

 private:
  NonlinearOperatorSpec spec_;
  GridSection u0_;
  std::vector<double> times_;
  LinearOperatorSpec frozen_;
  Tube tube_;
  double shift_ = 1.0;
  double lambda_ = 0.0;
};

/// One-shot G(u) on the ball's horizon (times taken from u).
SpaceTimeSection contraction_map(const NonlinearOperatorSpec& spec, const BallSpec& ball,
                                 const SpaceTimeSection& u);

/// sup over interior levels of |centered d_t u - P_t(u)|.
double nonlinear_residual(const NonlinearOperatorSpec& spec, const SpaceTimeSection& u);

struct IterationRecord {
  int iter = 0;
  double distance = 0.0;  ///< ||u_{k+1} - u_k||
  double factor = 0.0;    ///< distance / previous distance (0 on the first step)
  double tube_margin = 0.0;
  double residual = 0.0;  ///< residual of the input iterate
  double ball_distance = 0.0;
  bool cond31 = true;  ///< tube distance <= R0 / 2
  bool cond33 = true;  ///< factor <= 1/2
  bool cond37 = true;  ///< R / 2 >= first correction
  bool member = true;  ///< input iterate lies in Y
  double delta = 0.0;
};

struct ContractionTrace {
  std::vector<IterationRecord> records;
  double delta = 0.0;
  double radius = 0.0;
  int halvings = 0;
};

struct SolveResult {
  SpaceTimeSection solution;
  ContractionTrace trace;
  double residual = 0.0;
  bool residual_ok = false;
  HolderNormReport norm;
  int iterations = 0;
  double lambda = 0.0;
};

struct FixedPointOptions {
  double delta = 0.05;
  double dt = 1e-4;
  double tol = 1e-9;
  int max_iter = 40;
  double alpha = 0.5;
  int max_halvings = 12;
  double residual_tol = 1e-3;
  HolderOptions holder;
};

/// Picard iteration u_{k+1} = G(u_k) from the constant extension (or `start`), with
/// R = 4 ||G(u0) - u0||. Halves delta on a tube exit, a factor above 1/2, a
/// ball exit, instability, or max_iter; throws NoContractionHorizon after
/// max_halvings.
SolveResult solve_nonlinear(const NonlinearOperatorSpec& spec, const GridSection& u0,
                            const FixedPointOptions& options = {},
                            const Perturbation& start = {});

struct PerturbationPair {
  Perturbation first;
  Perturbation second;
};

struct ContractionRow {
  double delta = 0.0;
  double factor = 0.0;
  double radius = 0.0;
  int pairs_used = 0;
  int pairs_skipped = 0;
};

struct ContractionTable {
  std::vector<ContractionRow> rows;
  /// Least-squares slope of log factor against log delta (NaN with < 2 positive factors).
  double slope = 0.0;
};

/// max over pairs of ||G(u) - G(v)|| / ||u - v|| at each delta, u = u0 + p1, v = u0 + p2.
/// Pairs outside Y or with u = v are skipped.
ContractionTable measure_contraction(const NonlinearOperatorSpec& spec, const GridSection& u0,
                                     const std::vector<PerturbationPair>& pairs,
                                     const std::vector<double>& deltas,
                                     const FixedPointOptions& options = {});

double log_log_slope(std::span<const double> x, std::span<const double> y);

struct UniquenessResult {
  double distance = 0.0;
  bool unique = false;
  SolveResult first;
  SolveResult second;
};

/// Runs solve_nonlinear from two starts at a fixed delta (no halving) and
/// compares the fixed points; unique iff distance <= 10 tol.
UniquenessResult verify_uniqueness(const NonlinearOperatorSpec& spec, const GridSection& u0,
                                   const Perturbation& first, const Perturbation& second,
                                   const FixedPointOptions& options = {});

struct BootstrapRow {
  int direction = 0;
  int multiple = 0;  ///< h = multiple * spacing
  double h = 0.0;
  double norm = 0.0;
};

struct BootstrapReport {
  std::vector<BootstrapRow> rows;
  /// Parabolic norm of the spectral derivative d_i u, per direction.
  std::vector<double> derivative_norm;
  /// max relative change between successive h, per direction.
  std::vector<double> drift;
  /// max over h of norm(u_h) / derivative_norm, per direction.
  std::vector<double> ratio;
};

/// Norms of u_h = (u(x + h e_i, t) - u(x, t)) / h for every direction and h.
/// Throws InvalidArgument unless each h is a positive integer multiple of the spacing.
BootstrapReport bootstrap_diagnostic(const SpaceTimeSection& u, int order, HolderExponent alpha,
                                     const std::vector<double>& h_values,
                                     const HolderOptions& options = {});

}  // namespace parabolic
