#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "parabolic/jet.hpp"
#include "parabolic/linear_operator.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

/// F: jet -> R^l. Writes l values into `out`.
using JetMap = std::function<void(const Jet& jet, std::span<double> out)>;

/// A fully nonlinear operator P_t(u)(x) = F(x, t, u, du, ..., d^r u).
///
/// `d_eval`, when present, writes the l x (jet size) Jacobian dF^a/dz_c in
/// row-major order. Without it, derivatives fall back to central differences
/// in jet space with step 1e-6 * (1 + |z_c|).
struct NonlinearOperatorSpec {
  int dim = 1;
  int order = 2;
  int rank = 1;
  JetMap eval;
  JetMap d_eval;
  double tube_radius = 1.0;
  std::optional<double> k1;
  std::optional<double> k2;

  JetLayout layout() const { return JetLayout(dim, rank, order); }
  /// Throws InvalidArgument unless r is even and positive, l >= 1 and eval is set.
  void validate() const;
};

/// The set B: jets within R0 (sum of per-order sup deviations) of a center field.
class Tube {
 public:
  Tube(JetField center, double radius);

  const JetField& center() const { return center_; }
  double radius() const { return radius_; }

  /// sum_j sup_x |d^j u - d^j u0|.
  double distance(const JetField& jets) const;
  /// Throws TubeViolation naming the worst node if `jets` leaves the tube.
  void require_inside(const JetField& jets) const;

 private:
  JetField center_;
  double radius_;
};

/// Pointwise F over precomputed jets.
GridSection evaluate_on_jets(const NonlinearOperatorSpec& spec, const JetField& jets, double t);

/// P_t(u) on the grid. With a tube, jets are checked first.
GridSection evaluate_operator(const NonlinearOperatorSpec& spec, const GridSection& u, double t,
                              const Tube* tube = nullptr);

/// Jacobian of F at one jet (analytic or finite-difference fallback).
void jet_derivative(const NonlinearOperatorSpec& spec, const Jet& jet, std::span<double> out);

/// P_{t*|u}: coefficients A_b^{aI}(x) = dF^a / d(d_I u^b) along the base jets, frozen at t.
LinearOperatorSpec linearize(const NonlinearOperatorSpec& spec, const GridSection& base, double t,
                             const Tube* tube = nullptr);

struct LipschitzEstimate {
  double k1 = 0.0;  ///< sup |F| and |DF| over sampled tube points
  double k2 = 0.0;  ///< sup |DF(z1) - DF(z2)| / |z1 - z2| over sampled pairs
  int samples = 0;
};

/// Samples the tube of radius R0 around the jets of u0 to estimate K1 and K2.
/// Supplied spec constants take precedence.
LipschitzEstimate estimate_lipschitz(const NonlinearOperatorSpec& spec, const GridSection& u0,
                                     double t, int samples, std::uint64_t seed);

}  // namespace parabolic
