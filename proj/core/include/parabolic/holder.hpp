#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parabolic/linear_operator.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

/// Hoelder exponent alpha in (0, 1).
class HolderExponent {
 public:
  explicit HolderExponent(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

struct HolderOptions {
  /// Cap on the random subsample; grids whose full pair count fits are enumerated.
  std::size_t pair_budget = 32768;
  std::uint64_t seed = 20240901;
};

/// Space-time point pairs with precomputed weights d^{-alpha}, where
/// d((x,t),(y,s)) = |x - y|_periodic + |t - s|^{1/r}.
///
/// Either every pair (when the count fits the budget), or all spatially and
/// temporally adjacent pairs plus `pair_budget` seeded random pairs.
class PairSampler {
 public:
  PairSampler(const TorusGrid& grid, std::span<const double> times, int order, HolderExponent alpha,
              const HolderOptions& options);

  std::size_t size() const { return first_.size(); }
  bool exhaustive() const { return exhaustive_; }

  /// sup over pairs and channels of |w(p) - w(q)| / d(p, q)^alpha, for a
  /// field laid out as (level, node, channel).
  double seminorm(std::span<const double> field, int channels) const;

 private:
  bool exhaustive_ = false;
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> second_;
  std::vector<double> weight_;
};

/// Cached sampler for the given geometry (per thread, small LRU).
const PairSampler& pair_sampler_for(const TorusGrid& grid, std::span<const double> times,
                                    int order, HolderExponent alpha, const HolderOptions& options);

/// Discrete C^{r+alpha, 1+alpha/r} norm and its parts.
struct HolderNormReport {
  std::vector<double> sup_norms;   ///< |d_x^j u|_0 for j = 0..r
  double time_derivative_sup = 0;  ///< |d_t u|_0
  double spatial_seminorm = 0;     ///< [d_x^r u]_{alpha;Q}
  double time_seminorm = 0;        ///< [d_t u]_{alpha;Q}
  double total = 0;
  std::size_t pairs_examined = 0;

  /// Flat key/value record, e.g. ("sup_d2", 1.0), ("total", 7.3).
  std::vector<std::pair<std::string, double>> key_values() const;
};

/// Second-order finite-difference d_t u (centered inside, one-sided at the
/// ends); first order when only two levels exist.
SpaceTimeSection time_derivative(const SpaceTimeSection& u);

/// Spatial derivatives of order j at every level: layout (level, node, channel),
/// channel = (slot within order j) * l + b.
std::vector<double> spatial_derivative_field(const SpaceTimeSection& u, int j);

HolderNormReport parabolic_holder_norm(const SpaceTimeSection& u, int order, HolderExponent alpha,
                                       const HolderOptions& options = {});

/// ||f||_{C^{alpha, alpha/r}} = |f|_0 + [f]_{alpha;Q}.
double parabolic_lower_norm(const SpaceTimeSection& f, int order, HolderExponent alpha,
                            const HolderOptions& options = {});

/// ||u||_{C^{r+alpha}} = sum_{j<=r} |d^j u|_0 + [d^r u]_alpha (space only).
double spatial_holder_norm(const GridSection& u, int order, HolderExponent alpha,
                           const HolderOptions& options = {});

/// [d_x^j u]_{alpha;Q} for j = 0..r.
std::vector<double> derivative_seminorms(const SpaceTimeSection& u, int order,
                                         HolderExponent alpha, const HolderOptions& options = {});

struct InterpolationCheck {
  double lhs = 0;       ///< |d^r u|_0 + sum_{1<=j<r} (|d^j u|_0 + [d^j u]_a) + [u]_a
  double top_terms = 0; ///< [d^r u]_a + [d_t u]_a
  double sup = 0;       ///< |u|_0
  double epsilon = 0;
  double constant = 0;  ///< smallest C >= 0 with lhs <= eps * top_terms + C * sup
  double rhs = 0;
  bool holds = true;
};

InterpolationCheck verify_interpolation(const SpaceTimeSection& u, int order, HolderExponent alpha,
                                        double epsilon, const HolderOptions& options = {});

/// Evaluates the inequality with a given constant C (for batch-fitted constants).
InterpolationCheck interpolation_with_constant(const InterpolationCheck& fitted, double constant);

/// Lambda = sum over multi-indices of the C^alpha norms of the coefficient fields A^I.
double coefficient_norm_sum(const LinearOperatorSpec& op, HolderExponent alpha,
                            const HolderOptions& options = {});

}  // namespace parabolic
