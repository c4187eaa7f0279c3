#include "parabolic/problems.hpp"

#include <algorithm>
#include <cmath>

#include "parabolic/error.hpp"
#include "parabolic/fourier.hpp"

namespace parabolic {

namespace {

const MultiIndex kU(0, 0);
const MultiIndex kX(1, 0);
const MultiIndex kXX(2, 0);
const MultiIndex kYY(0, 2);
const MultiIndex kXXXX(4, 0);

void clear(std::span<double> out) { std::ranges::fill(out, 0.0); }

// Jacobian entry dF^a / d(d_I u^b).
double& entry(const Jet& jet, std::span<double> out, int a, const MultiIndex& index, int b) {
  return out[a * jet.layout().size() + jet.layout().component(index, b)];
}

GridSection sample_scalar(const TorusGrid& grid, const std::function<double(double, double)>& fn) {
  return GridSection::sample(grid, 1, [fn](const std::array<double, 2>& x, double,
                                           std::span<double> out) { out[0] = fn(x[0], x[1]); });
}

NonlinearOperatorSpec laplacian_spec(int dim, double sign, double tube) {
  NonlinearOperatorSpec spec;
  spec.dim = dim;
  spec.order = 2;
  spec.tube_radius = tube;
  spec.eval = [dim, sign](const Jet& jet, std::span<double> out) {
    double lap = jet.derivative(kXX);
    if (dim == 2) lap += jet.derivative(kYY);
    out[0] = sign * lap;
  };
  spec.d_eval = [dim, sign](const Jet& jet, std::span<double> out) {
    clear(out);
    entry(jet, out, 0, kXX, 0) = sign;
    if (dim == 2) entry(jet, out, 0, kYY, 0) = sign;
  };
  return spec;
}

ProblemCard heat_1d() {
  ProblemCard card;
  card.name = "heat";
  card.dim = 1;
  card.spec = laplacian_spec(1, 1.0, 100.0);
  card.initial = [](const TorusGrid& g) {
    return sample_scalar(g, [](double x, double) { return std::sin(3 * x); });
  };
  card.exact = ExactSolution{
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = std::exp(-9 * t) * std::sin(3 * x[0]);
      },
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = -9 * std::exp(-9 * t) * std::sin(3 * x[0]);
      }};
  card.analytic_lambda = 1.0;
  card.notes = "u_t = u_xx, u* = exp(-9t) sin(3x)";
  card.defaults = {64, 0.1, 1e-4};
  return card;
}

ProblemCard heat_2d() {
  ProblemCard card;
  card.name = "heat";
  card.dim = 2;
  card.spec = laplacian_spec(2, 1.0, 100.0);
  card.initial = [](const TorusGrid& g) {
    return sample_scalar(g, [](double x, double y) { return std::sin(3 * x) * std::cos(y); });
  };
  card.exact = ExactSolution{
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = std::exp(-10 * t) * std::sin(3 * x[0]) * std::cos(x[1]);
      },
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = -10 * std::exp(-10 * t) * std::sin(3 * x[0]) * std::cos(x[1]);
      }};
  card.analytic_lambda = 1.0;
  card.notes = "u_t = u_xx + u_yy, u* = exp(-10t) sin(3x) cos(y)";
  card.defaults = {16, 0.02, 1e-4};
  return card;
}

ProblemCard biharmonic() {
  ProblemCard card;
  card.name = "biharmonic";
  card.dim = 1;
  card.spec.order = 4;
  card.spec.tube_radius = 100.0;
  card.spec.eval = [](const Jet& jet, std::span<double> out) { out[0] = -jet.derivative(kXXXX); };
  card.spec.d_eval = [](const Jet& jet, std::span<double> out) {
    clear(out);
    entry(jet, out, 0, kXXXX, 0) = -1.0;
  };
  card.initial = [](const TorusGrid& g) {
    return sample_scalar(g, [](double x, double) { return std::sin(2 * x); });
  };
  card.exact = ExactSolution{
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = std::exp(-16 * t) * std::sin(2 * x[0]);
      },
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = -16 * std::exp(-16 * t) * std::sin(2 * x[0]);
      }};
  card.analytic_lambda = 1.0;
  card.notes = "u_t = -u_xxxx, u* = exp(-16t) sin(2x)";
  card.defaults = {64, 0.05, 1e-4};
  return card;
}

ProblemCard semilinear(int dim) {
  ProblemCard card;
  card.name = "semilinear";
  card.dim = dim;
  card.spec = laplacian_spec(dim, 1.0, 4.0);
  card.spec.eval = [dim](const Jet& jet, std::span<double> out) {
    double lap = jet.derivative(kXX);
    if (dim == 2) lap += jet.derivative(kYY);
    out[0] = lap + jet.value() * jet.value();
  };
  card.spec.d_eval = [dim](const Jet& jet, std::span<double> out) {
    clear(out);
    entry(jet, out, 0, kXX, 0) = 1.0;
    if (dim == 2) entry(jet, out, 0, kYY, 0) = 1.0;
    entry(jet, out, 0, kU, 0) = 2.0 * jet.value();
  };
  if (dim == 1) {
    card.initial = [](const TorusGrid& g) {
      return sample_scalar(g, [](double x, double) { return 0.5 * std::sin(x); });
    };
    card.notes = "u_t = u_xx + u^2, u0 = 0.5 sin(x)";
    card.defaults = {64, 0.05, 1e-4};
  } else {
    card.initial = [](const TorusGrid& g) {
      return sample_scalar(g, [](double x, double y) { return 0.5 * std::sin(x) * std::cos(y); });
    };
    card.notes = "u_t = u_xx + u_yy + u^2, u0 = 0.5 sin(x) cos(y)";
    card.defaults = {16, 0.02, 1e-4};
  }
  card.analytic_lambda = 1.0;
  return card;
}

ProblemCard arctan_card() {
  ProblemCard card;
  card.name = "arctan";
  card.dim = 1;
  card.spec.tube_radius = 1.0;
  const SectionFn g = [](const std::array<double, 2>& x, double t, std::span<double> out) {
    const double c = std::exp(-t) * std::cos(x[0]);
    out[0] = -c + std::atan(c);
  };
  card.forcing = g;
  card.spec.eval = [](const Jet& jet, std::span<double> out) {
    const double c = std::exp(-jet.t()) * std::cos(jet.x()[0]);
    out[0] = std::atan(jet.derivative(kXX)) - c + std::atan(c);
  };
  card.spec.d_eval = [](const Jet& jet, std::span<double> out) {
    clear(out);
    const double q = jet.derivative(kXX);
    entry(jet, out, 0, kXX, 0) = 1.0 / (1.0 + q * q);
  };
  card.initial = [](const TorusGrid& grid) {
    return sample_scalar(grid, [](double x, double) { return std::cos(x); });
  };
  card.exact = ExactSolution{
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = std::exp(-t) * std::cos(x[0]);
      },
      [](const std::array<double, 2>& x, double t, std::span<double> out) {
        out[0] = -std::exp(-t) * std::cos(x[0]);
      }};
  // dF/dq = 1 / (1 + cos^2 x) at u0 = cos x.
  card.analytic_lambda = 0.5;
  card.notes = "u_t = arctan(u_xx) + g, u* = exp(-t) cos(x)";
  card.defaults = {64, 0.05, 1e-4};
  return card;
}

ProblemCard coupled() {
  ProblemCard card;
  card.name = "coupled";
  card.dim = 1;
  card.spec.rank = 2;
  card.spec.tube_radius = 2.0;
  card.spec.eval = [](const Jet& jet, std::span<double> out) {
    const double u = jet.value(0), v = jet.value(1);
    const double uxx = jet.derivative(kXX, 0), vxx = jet.derivative(kXX, 1);
    out[0] = uxx + 0.5 * vxx + v * v;
    out[1] = -0.5 * uxx + vxx + u * v;
  };
  card.spec.d_eval = [](const Jet& jet, std::span<double> out) {
    clear(out);
    const double u = jet.value(0), v = jet.value(1);
    entry(jet, out, 0, kXX, 0) = 1.0;
    entry(jet, out, 0, kXX, 1) = 0.5;
    entry(jet, out, 0, kU, 1) = 2.0 * v;
    entry(jet, out, 1, kXX, 0) = -0.5;
    entry(jet, out, 1, kXX, 1) = 1.0;
    entry(jet, out, 1, kU, 0) = v;
    entry(jet, out, 1, kU, 1) = u;
  };
  card.initial = [](const TorusGrid& grid) {
    return GridSection::sample(grid, 2,
                               [](const std::array<double, 2>& x, double, std::span<double> out) {
                                 out[0] = 0.3 * std::sin(x[0]);
                                 out[1] = 0.3 * std::cos(x[0]);
                               });
  };
  // Symmetric part of the top block is the identity.
  card.analytic_lambda = 1.0;
  card.notes = "u_t = u_xx + v_xx/2 + v^2, v_t = -u_xx/2 + v_xx + uv";
  card.defaults = {64, 0.05, 1e-4};
  return card;
}

ProblemCard semilinear_system() {
  ProblemCard card;
  card.name = "semilinear_system";
  card.dim = 1;
  card.spec.rank = 2;
  card.spec.tube_radius = 2.0;
  card.spec.eval = [](const Jet& jet, std::span<double> out) {
    const double u = jet.value(0), v = jet.value(1);
    out[0] = jet.derivative(kXX, 0) + v * v;
    out[1] = jet.derivative(kXX, 1) + u * v;
  };
  card.spec.d_eval = [](const Jet& jet, std::span<double> out) {
    clear(out);
    const double u = jet.value(0), v = jet.value(1);
    entry(jet, out, 0, kXX, 0) = 1.0;
    entry(jet, out, 0, kU, 1) = 2.0 * v;
    entry(jet, out, 1, kXX, 1) = 1.0;
    entry(jet, out, 1, kU, 0) = v;
    entry(jet, out, 1, kU, 1) = u;
  };
  card.initial = [](const TorusGrid& grid) {
    return GridSection::sample(grid, 2,
                               [](const std::array<double, 2>& x, double, std::span<double> out) {
                                 out[0] = 0.2 * std::sin(x[0]);
                                 out[1] = 0.2 + 0.1 * std::cos(x[0]);
                               });
  };
  card.analytic_lambda = 1.0;
  card.notes = "u_t = u_xx + v^2, v_t = v_xx + uv";
  card.defaults = {64, 0.05, 1e-4};
  return card;
}

ProblemCard backward_heat() {
  ProblemCard card;
  card.name = "backward_heat";
  card.dim = 1;
  card.spec = laplacian_spec(1, -1.0, 100.0);
  card.initial = [](const TorusGrid& g) {
    return sample_scalar(g, [](double x, double) { return std::sin(x); });
  };
  card.analytic_lambda = -1.0;
  card.notes = "u_t = -u_xx (ill-posed)";
  card.debug = true;
  card.defaults = {64, 0.05, 1e-4};
  return card;
}

std::vector<ProblemCard> build_catalog() {
  std::vector<ProblemCard> cards{heat_1d(),    heat_2d(), biharmonic(),        semilinear(1),
                                 semilinear(2), arctan_card(), coupled(), semilinear_system(),
                                 backward_heat()};
  for (const ProblemCard& card : cards) {
    if (!card.exact) continue;
    for (int n : {32, 64}) {
      const double r = registration_residual(card, n);
      if (!(r <= 1e-8)) {
        throw Error("card " + card.name + " fails its registration identity (residual " +
                    std::to_string(r) + ")");
      }
    }
  }
  return cards;
}

}  // namespace

const std::vector<ProblemCard>& catalog() {
  static const std::vector<ProblemCard> cards = build_catalog();
  return cards;
}

const ProblemCard& find_card(const std::string& name, int dim) {
  for (const ProblemCard& card : catalog()) {
    if (card.name == name && card.dim == dim) return card;
  }
  throw InvalidArgument("unknown problem '" + name + "' on T^" + std::to_string(dim));
}

double registration_residual(const ProblemCard& card, int n) {
  if (!card.exact) throw InvalidArgument("card has no exact solution");
  const TorusGrid grid(card.dim, n);
  const SpaceTimeSection g = manufacture(card.spec, *card.exact, grid, {0.0, 0.05, 0.1});
  return g.sup_norm();
}

SpaceTimeSection manufacture(const NonlinearOperatorSpec& spec, const ExactSolution& exact,
                             const TorusGrid& grid, const std::vector<double>& times) {
  spec.validate();
  if (!exact.value || !exact.time_derivative) throw InvalidArgument("exact solution is incomplete");
  if (grid.dim() != spec.dim) throw InvalidArgument("grid dimension does not match operator");
  SpaceTimeSection g(grid, spec.rank, times);
  for (std::size_t m = 0; m < times.size(); ++m) {
    const GridSection u = GridSection::sample(grid, spec.rank, exact.value, times[m]);
    if (high_mode_energy_fraction(u) > 1e-10) {
      throw InvalidArgument("exact solution is not resolved on this grid");
    }
    const GridSection ut = GridSection::sample(grid, spec.rank, exact.time_derivative, times[m]);
    g.set_slice(m, ut - evaluate_operator(spec, u, times[m]));
  }
  return g;
}

NonlinearOperatorSpec with_forcing(const NonlinearOperatorSpec& spec, SectionFn forcing) {
  NonlinearOperatorSpec out = spec;
  const JetMap base = spec.eval;
  const int rank = spec.rank;
  out.eval = [base, forcing, rank](const Jet& jet, std::span<double> values) {
    base(jet, values);
    std::vector<double> extra(rank);
    forcing(jet.x(), jet.t(), extra);
    for (int a = 0; a < rank; ++a) values[a] += extra[a];
  };
  return out;
}

}  // namespace parabolic
