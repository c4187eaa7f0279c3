#include <algorithm>
#include <cmath>
#include <random>

#include "commands.hpp"
#include "parabolic/ellipticity.hpp"
#include "parabolic/fixed_point.hpp"
#include "parabolic/holder.hpp"
#include "parabolic/linear_solver.hpp"
#include "parabolic/transport.hpp"

namespace parabolic::cli {

namespace {

CheckRow row(const std::string& suite, const std::string& check, double value,
             const std::string& relation, double threshold) {
  bool pass = false;
  if (relation == "<=") pass = value <= threshold;
  if (relation == "<") pass = value < threshold;
  if (relation == ">=") pass = value >= threshold;
  if (relation == ">") pass = value > threshold;
  if (relation == "==") pass = value == threshold;
  return {suite, check, value, relation, threshold, pass && std::isfinite(value)};
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", v);
  return buffer;
}

/// Random trigonometric polynomial, |k_i| <= kmax, scaled to unit sup norm on the grid.
class RandomField {
 public:
  RandomField(std::mt19937_64& rng, int dim, int rank, int kmax) {
    std::uniform_int_distribution<int> k(-kmax, kmax);
    std::uniform_int_distribution<int> comp(0, rank - 1);
    std::normal_distribution<double> amp(0.0, 1.0);
    for (int level = 0; level < 3; ++level) {
      for (int i = 0; i < 6; ++i) {
        terms_.push_back({level, k(rng), dim == 2 ? k(rng) : 0, comp(rng), amp(rng), amp(rng)});
      }
    }
  }

  /// Quadratic in t when `with_time`, otherwise the t^0 part only.
  SpaceTimeSection sample(const TorusGrid& grid, int rank, const std::vector<double>& times,
                          bool with_time) const {
    SpaceTimeSection u = SpaceTimeSection::sample(
        grid, rank, times, [&](const std::array<double, 2>& x, double t, std::span<double> out) {
          std::fill(out.begin(), out.end(), 0.0);
          for (const Term& term : terms_) {
            if (term.power > 0 && !with_time) continue;
            const double phase = term.kx * x[0] + term.ky * x[1];
            out[term.b] += std::pow(t, term.power) * (term.a * std::cos(phase) + term.c * std::sin(phase));
          }
        });
    const double s = u.sup_norm();
    if (s > 0) u *= 1.0 / s;
    return u;
  }

 private:
  struct Term {
    int power, kx, ky, b;
    double a, c;
  };
  std::vector<Term> terms_;
};

Perturbation mode(double amplitude, int k, double phase, double power) {
  return [=](const std::array<double, 2>& x, double t, double, std::span<double> out) {
    for (std::size_t b = 0; b < out.size(); ++b) {
      out[b] = amplitude * std::pow(t, power) * std::sin(k * x[0] + phase + 0.7 * b);
    }
  };
}

// Leading coefficient in [0.6, 1.4] times the principal part of order r, plus bounded lower terms.
LinearOperatorSpec random_operator(std::mt19937_64& rng, const TorusGrid& grid, int order) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a1 = unit(rng), a2 = unit(rng), p1 = 6.3 * unit(rng), p2 = 6.3 * unit(rng);
  const double b = unit(rng) - 0.5, c = unit(rng) - 0.5;
  auto leading = [=](const std::array<double, 2>& x) {
    return 1 + 0.4 * (a1 * std::cos(x[0] + p1) + a2 * std::cos(2 * x[0] + p2)) / (a1 + a2);
  };
  const double sign = (order / 2) % 2 == 1 ? 1.0 : -1.0;
  LinearOperatorSpec op(grid, JetLayout(grid.dim(), 1, order));
  if (grid.dim() == 1) {
    op.set_field(MultiIndex(order), 0, 0, [=](const std::array<double, 2>& x) { return sign * leading(x); });
  } else {
    // (d_x^2 + d_y^2)^{r/2} expanded with binomial weights
    const int half = order / 2;
    double binom = 1.0;
    for (int i = 0; i <= half; ++i) {
      const double w = binom;
      op.set_field(MultiIndex(2 * (half - i), 2 * i), 0, 0,
                   [=](const std::array<double, 2>& x) { return sign * w * leading(x); });
      binom = binom * (half - i) / (i + 1);
    }
  }
  op.set_field(MultiIndex(1), 0, 0, [=](const std::array<double, 2>& x) { return b * std::cos(x[0]); });
  op.set_constant(MultiIndex(0), Eigen::MatrixXd::Constant(1, 1, c));
  return op;
}

std::vector<CheckRow> ellipticity_suite(const RunConfig&, const Resolved& r) {
  const TorusGrid grid = r.grid();
  const EllipticityReport e =
      check_strong_ellipticity(linearize(r.card->spec, r.card->initial(grid), 0.0), 0.0);
  std::vector<CheckRow> rows{row("ellipticity", "lambda at u0", e.lambda, ">", 0.0)};
  if (!r.card->debug) rows.push_back(row("ellipticity", "lambda at u0 (catalog floor)", e.lambda, ">=", 0.1));
  if (r.card->analytic_lambda) {
    rows.push_back(row("ellipticity", "|lambda - analytic " + num(*r.card->analytic_lambda) + "|",
                       std::abs(e.lambda - *r.card->analytic_lambda), "<=", 1e-12));
  }
  return rows;
}

std::vector<CheckRow> interpolation_suite(const RunConfig& config, const Resolved& r) {
  const HolderExponent alpha(config.alpha);
  const int rank = r.card->spec.rank;
  const int n0 = r.card->dim == 1 ? 16 : 8;
  const int kmax = r.card->dim == 1 ? 3 : 2;
  const int count = 20;
  std::vector<CheckRow> rows;
  for (double eps : {0.1, 0.01}) {
    double constant[2] = {0.0, 0.0};
    int held[2] = {0, 0};
    for (int level = 0; level < 2; ++level) {
      const int n = n0 << level;
      const TorusGrid grid(r.card->dim, n);
      std::vector<InterpolationCheck> checks;
      for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(config.seed + i);
        const RandomField field(rng, r.card->dim, rank, kmax);
        const auto u = field.sample(grid, rank, uniform_times(0.1, n / 2), true);
        checks.push_back(verify_interpolation(u, r.order, alpha, eps));
      }
      for (const auto& c : checks) constant[level] = std::max(constant[level], c.constant);
      for (const auto& c : checks) held[level] += interpolation_with_constant(c, constant[level]).holds;
    }
    const std::string tag = "eps=" + num(eps);
    rows.push_back(row("interpolation", tag + ": sections satisfying, batch C", held[0] + held[1], ">=", 2 * count));
    rows.push_back(row("interpolation", tag + ": C change under grid doubling",
                       std::max(constant[0] / constant[1], constant[1] / constant[0]), "<", 2.0));
  }
  return rows;
}

std::vector<CheckRow> garding_suite(const RunConfig& config, const Resolved& r) {
  const int order = r.order;
  const double c = garding_constant(order, 128);
  double worst = INFINITY;
  for (int kx = 0; kx <= 128; ++kx) {
    for (int ky = 0; kx * kx + ky * ky <= 128 * 128; ++ky) {
      const double m = kx * kx + ky * ky;
      const double slack = std::pow(m, 0.5 * order) - 0.5 * std::pow(1 + m, 0.5 * order) + c;
      worst = std::min(worst, slack / std::max(1.0, std::pow(1 + m, 0.5 * order)));
    }
  }
  const TorusGrid grid = r.grid();
  int held = 0;
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < 100; ++i) {
    const RandomField field(rng, grid.dim(), 1, grid.points_per_dim() / 2 - 1);
    held += check_garding(order, field.sample(grid, 1, {0.0}, false).slice(0)).holds(c);
  }
  return {row("garding", "C = " + num(c) + ": per-mode slack, |k| <= 128", worst, ">=", -1e-12),
          row("garding", "C = " + num(c) + ": random psi satisfying", held, ">=", 100)};
}

std::vector<CheckRow> gronwall_suite(const RunConfig& config, const Resolved& r) {
  // w' = L0 w + F(u0, t), w(0) = 0: the first-correction problem of the card
  const TorusGrid grid = r.grid();
  const GridSection u0 = r.card->initial(grid);
  const LinearOperatorSpec op = linearize(r.card->spec, u0, 0.0);
  const NonlinearOperatorSpec spec = r.card->spec;
  const SourceFn f = [spec, u0](double t, std::span<double> out) {
    const GridSection v = evaluate_operator(spec, u0, t);
    std::copy(v.values().begin(), v.values().end(), out.begin());
  };
  GronwallOptions opts;
  opts.order = r.order;
  opts.alpha = config.alpha;
  opts.holder.seed = config.seed;
  std::vector<double> full, nested;
  for (int steps : {200, 400}) {
    const LinearSolution s = solve_linear({op, f, GridSection(grid, u0.rank()), 0.2, steps});
    const SpaceTimeSection fs = sample_source(f, grid, u0.rank(), s.u.times());
    full.push_back(gronwall_check(s.u, fs, opts).constant);
    if (steps == 400) {
      for (double T : {0.05, 0.1, 0.2}) {
        const std::size_t levels = static_cast<std::size_t>(std::lround(T / 0.2 * steps)) + 1;
        nested.push_back(gronwall_check(s.u.leading(levels), fs.leading(levels), opts).constant);
      }
    }
  }
  const double growth = std::min(nested[1] - nested[0], nested[2] - nested[1]);
  return {row("gronwall", "C at T=0.2", full[1], "<", INFINITY),
          row("gronwall", "C drift under dt halving", std::abs(full[1] - full[0]) / full[0], "<", 0.1),
          row("gronwall", "C increment over T = 0.05, 0.1, 0.2", growth, ">=", 0.0)};
}

std::vector<CheckRow> schauder_suite(const RunConfig& config, const Resolved& r) {
  const HolderExponent alpha(config.alpha);
  HolderOptions holder;
  holder.seed = config.seed;
  const bool fourth = r.order >= 4;
  const double horizon = fourth ? 0.01 : 0.05;
  const double dt = fourth ? 2e-6 : 2.5e-5;
  const int n0 = r.card->dim == 1 ? 32 : 8;
  const int kmax = fourth || r.card->dim == 2 ? 2 : 3;

  const TorusGrid grid(r.card->dim, n0);
  std::mt19937_64 rng(config.seed);
  std::vector<double> ratios;
  for (int i = 0; i < 20; ++i) {
    const LinearOperatorSpec op = random_operator(rng, grid, r.order);
    const RandomField u0(rng, grid.dim(), 1, kmax);
    const RandomField f(rng, grid.dim(), 1, kmax);
    const auto fs = f.sample(grid, 1, uniform_times(horizon, 100), true);
    const LinearProblem problem{op, source_from_section(fs), u0.sample(grid, 1, {0.0}, false).slice(0), horizon, 100};
    StepperConfig stepper;
    stepper.dt = dt;
    ratios.push_back(schauder_ratio(problem, solve_linear(problem, stepper), alpha, holder));
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = 0.5 * (ratios[9] + ratios[10]);

  std::vector<double> card_ratio;
  for (int n : {n0, 2 * n0}) {
    const TorusGrid g(r.card->dim, n);
    const GridSection u0 = r.card->initial(g);
    const LinearProblem problem{linearize(r.card->spec, u0, 0.0), zero_source(), u0, horizon, 3 * n};
    StepperConfig stepper;
    stepper.dt = dt * n0 / n;
    card_ratio.push_back(schauder_ratio(problem, solve_linear(problem, stepper), alpha, holder));
  }
  return {row("schauder", "max / median over 20 random problems", ratios.back() / median, "<=", 10.0),
          row("schauder", "card ratio change under refinement",
              std::max(card_ratio[0] / card_ratio[1], card_ratio[1] / card_ratio[0]), "<", 2.0)};
}

std::vector<CheckRow> contraction_suite(const RunConfig& config, const Resolved& r) {
  const std::vector<PerturbationPair> pairs{
      {mode(0.1, 1, 0.0, 1.0), mode(-0.1, 2, 0.0, 1.0)},
      {mode(0.05, 3, 0.3, 1.0), {}},
      {mode(0.2, 1, 0.0, 2.0), mode(0.1, 2, 1.0, 1.0)},
      {mode(0.02, 4, 0.0, 1.0), mode(-0.02, 1, 0.5, 1.0)},
  };
  FixedPointOptions o;
  o.alpha = config.alpha;
  o.dt = r.dt;
  o.holder.seed = config.seed;
  const ContractionTable t =
      measure_contraction(r.card->spec, r.card->initial(r.grid()), pairs, {0.04, 0.02, 0.01, 0.005}, o);
  double largest = 0.0, worst_growth = 0.0;
  int used = INT32_MAX;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    largest = std::max(largest, t.rows[k].factor);
    used = std::min(used, t.rows[k].pairs_used);
    if (k > 0 && t.rows[k - 1].factor > 0) worst_growth = std::max(worst_growth, t.rows[k].factor / t.rows[k - 1].factor);
  }
  std::vector<CheckRow> rows{row("contraction", "pairs inside Y at every delta", used, ">=", 1)};
  if (largest <= 1e-9) {
    rows.push_back(row("contraction", "constant map: max factor", largest, "<=", 1e-9));
    return rows;
  }
  const double predicted = config.alpha / r.order;
  rows.push_back(row("contraction", "factor at delta = 0.005", t.rows.back().factor, "<=", 0.5));
  rows.push_back(row("contraction", "factor(delta/2) / factor(delta)", worst_growth, "<=", 1.0));
  rows.push_back(row("contraction", "log-log slope, lower band", t.slope, ">=", 0.7 * predicted));
  rows.push_back(row("contraction", "log-log slope, upper band", t.slope, "<=", 1.3 * predicted));
  return rows;
}

std::vector<CheckRow> uniqueness_suite(const RunConfig& config, const Resolved& r) {
  FixedPointOptions o;
  o.delta = r.delta;
  o.dt = r.dt;
  o.tol = config.tol;
  o.alpha = config.alpha;
  o.holder.seed = config.seed;
  const Perturbation bump = [](const std::array<double, 2>& x, double t, double delta, std::span<double> out) {
    for (std::size_t b = 0; b < out.size(); ++b) out[b] = 0.01 * std::sin(x[0] + b) * t * (delta - t);
  };
  const UniquenessResult u = verify_uniqueness(r.card->spec, r.card->initial(r.grid()), {}, bump, o);
  return {row("uniqueness", "distance between fixed points", u.distance, "<=", 10 * config.tol)};
}

std::vector<CheckRow> bootstrap_suite(const RunConfig& config, const Resolved& r) {
  const TorusGrid grid = r.grid();
  FixedPointOptions o;
  o.delta = r.delta;
  o.dt = r.dt;
  o.alpha = config.alpha;
  o.holder.seed = config.seed;
  const SolveResult s = solve_nonlinear(r.card->spec, r.card->initial(grid), o);
  const double dx = grid.spacing();
  HolderOptions holder;
  holder.seed = config.seed;
  const BootstrapReport b =
      bootstrap_diagnostic(s.solution, r.order, HolderExponent(config.alpha), {4 * dx, 2 * dx, dx}, holder);
  std::vector<CheckRow> rows;
  for (std::size_t i = 0; i < b.drift.size(); ++i) {
    const std::string axis = i == 0 ? "x" : "y";
    rows.push_back(row("bootstrap", "d_" + axis + ": drift over h = 4dx, 2dx, dx", b.drift[i], "<=", 0.05));
    rows.push_back(row("bootstrap", "d_" + axis + ": max |u_h| / |spectral derivative|", b.ratio[i], "<=", 3.0));
  }
  return rows;
}

std::vector<CheckRow> transport_suite(const RunConfig&, const Resolved&) {
  const Eigen::Vector2d v0(0.6, 0.8);
  const TransportResult t = parallel_transport(rotation_connection(), unit_speed_circle(2 * M_PI), v0, 0.01);
  double err = 0.0;
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    const double s = t.s[i];
    const Eigen::Vector2d exact(std::cos(s) * v0[0] - std::sin(s) * v0[1], std::sin(s) * v0[0] + std::cos(s) * v0[1]);
    err = std::max(err, (t.samples[i] - exact).norm());
  }
  return {row("transport", "rotation connection vs closed form", err, "<=", 1e-8),
          row("transport", "norm drift", t.max_norm_drift, "<=", 1e-8)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ellipticity", "interpolation", "garding",
                                              "gronwall",    "schauder",      "contraction",
                                              "uniqueness",  "bootstrap",     "transport"};
  return names;
}

std::vector<CheckRow> run_suite(const std::string& suite, const RunConfig& config) {
  const Resolved r = resolve(config);
  if (suite == "ellipticity") return ellipticity_suite(config, r);
  if (suite == "interpolation") return interpolation_suite(config, r);
  if (suite == "garding") return garding_suite(config, r);
  if (suite == "gronwall") return gronwall_suite(config, r);
  if (suite == "schauder") return schauder_suite(config, r);
  if (suite == "contraction") return contraction_suite(config, r);
  if (suite == "uniqueness") return uniqueness_suite(config, r);
  if (suite == "bootstrap") return bootstrap_suite(config, r);
  if (suite == "transport") return transport_suite(config, r);
  throw ConfigError("unknown suite '" + suite + "'");
}

}  // namespace parabolic::cli
