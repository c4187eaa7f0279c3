#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/nonlinear_operator.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

struct ExactSolution {
  SectionFn value;
  SectionFn time_derivative;
};

/// Suggested run parameters for a card.
struct CardDefaults {
  int n = 64;
  double delta = 0.05;
  double dt = 1e-4;
};

struct ProblemCard {
  std::string name;
  int dim = 1;
  /// F including any forcing g, so that du/dt = F(jets of u) is the full equation.
  NonlinearOperatorSpec spec;
  std::function<GridSection(const TorusGrid&)> initial;
  std::optional<ExactSolution> exact;
  std::optional<SectionFn> forcing;
  std::optional<double> analytic_lambda;
  std::string notes;
  /// Ill-posed cards kept only to exercise failure paths.
  bool debug = false;
  CardDefaults defaults;
};

/// Every registered card; cards with an exact solution pass the registration
/// identity at N = 32 and N = 64 (checked once, on first use).
const std::vector<ProblemCard>& catalog();

/// Throws InvalidArgument for an unknown (name, dim).
const ProblemCard& find_card(const std::string& name, int dim = 1);

/// sup over nodes and sample times of |d_t u* - F(jets of u*)| on an N-point grid.
double registration_residual(const ProblemCard& card, int n);

/// g = d_t u* - F(jets of u*) at each time. Throws InvalidArgument when u* is
/// not resolved (relative energy above 1e-10 in the top modes).
SpaceTimeSection manufacture(const NonlinearOperatorSpec& spec, const ExactSolution& exact,
                             const TorusGrid& grid, const std::vector<double>& times);

/// F + g(x, t).
NonlinearOperatorSpec with_forcing(const NonlinearOperatorSpec& spec, SectionFn forcing);

}  // namespace parabolic
