// Acceptance suite: one line per criterion, exit status 0 iff every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "parabolic/ellipticity.hpp"
#include "parabolic/error.hpp"
#include "parabolic/fixed_point.hpp"
#include "parabolic/holder.hpp"
#include "parabolic/linear_solver.hpp"
#include "parabolic/problems.hpp"
#include "parabolic/transport.hpp"
#include "support.hpp"

using namespace parabolic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string fmt(const char* format, Args... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double error_against(const SpaceTimeSection& u, const SectionFn& exact) {
  return (SpaceTimeSection::sample(u.grid(), u.rank(), u.times(), exact) - u).sup_norm();
}

Perturbation mode(double amplitude, int k, double phase, double power) {
  return [=](const std::array<double, 2>& x, double t, double, std::span<double> out) {
    for (std::size_t b = 0; b < out.size(); ++b) {
      out[b] = amplitude * std::pow(t, power) * std::sin(k * x[0] + phase + 0.7 * b);
    }
  };
}

// 1
Outcome heat_decay() {
  const ProblemCard& card = find_card("heat");
  const TorusGrid g(1, 64);
  const auto principal = solve_principal(2, zero_source(), card.initial(g), 0.1, 1000);
  const double e_principal = error_against(principal, card.exact->value);

  FixedPointOptions o;
  o.delta = 0.1;
  o.dt = 1e-4;
  const SolveResult r = solve_nonlinear(card.spec, card.initial(g), o);
  const double e_fixed = error_against(r.solution, card.exact->value);
  const bool full = std::abs(r.trace.delta - 0.1) <= 1e-15;
  return {e_principal <= 1e-10 && e_fixed <= 1e-3 && full,
          fmt("principal err %.3e (<= 1e-10), fixed-point err %.3e (<= 1e-3) on [0, %g]",
              e_principal, e_fixed, r.trace.delta)};
}

// 2
Outcome biharmonic_decay() {
  const ProblemCard& card = find_card("biharmonic");
  const TorusGrid g(1, 64);
  const auto u = solve_principal(4, zero_source(), card.initial(g), 0.05, 500);
  const double err = error_against(u, card.exact->value);
  return {err <= 1e-10, fmt("principal err %.3e (<= 1e-10)", err)};
}

// 3
Outcome arctan_convergence() {
  const ProblemCard& card = find_card("arctan");
  const TorusGrid g(1, 64);
  std::vector<double> errors;
  std::vector<double> deltas;
  for (double dt : {1e-4, 5e-5}) {
    FixedPointOptions o;
    o.delta = 0.05;
    o.dt = dt;
    const SolveResult r = solve_nonlinear(card.spec, card.initial(g), o);
    errors.push_back(error_against(r.solution, card.exact->value));
    deltas.push_back(r.trace.delta);
  }
  const double ratio = errors[0] / errors[1];
  const bool same_horizon = deltas[0] == 0.05 && deltas[1] == 0.05;
  return {errors[0] <= 1e-3 && ratio >= 1.6 && ratio <= 2.4 && same_horizon,
          fmt("err(dt=1e-4) %.3e (<= 1e-3), err(dt=5e-5) %.3e, ratio %.3f in [1.6, 2.4]",
              errors[0], errors[1], ratio)};
}

// 4
Outcome contraction_scaling() {
  const ProblemCard& card = find_card("semilinear");
  const TorusGrid g(1, 64);
  const std::vector<PerturbationPair> pairs{
      {mode(0.1, 1, 0.0, 1.0), mode(-0.1, 2, 0.0, 1.0)},
      {mode(0.05, 3, 0.3, 1.0), {}},
      {mode(0.2, 1, 0.0, 2.0), mode(0.1, 2, 1.0, 1.0)},
      {mode(0.02, 4, 0.0, 1.0), mode(-0.02, 1, 0.5, 1.0)},
  };
  const std::vector<double> deltas{0.04, 0.02, 0.01, 0.005};
  FixedPointOptions o;
  o.alpha = 0.5;
  const ContractionTable t = measure_contraction(card.spec, card.initial(g), pairs, deltas, o);
  std::string factors;
  bool all_used = true;
  for (const ContractionRow& row : t.rows) {
    factors += fmt(" %.3g:%.3e", row.delta, row.factor);
    all_used = all_used && row.pairs_used > 0;
  }
  const double smallest = t.rows.back().factor;
  const bool slope_ok = t.slope >= 0.175 && t.slope <= 0.325;
  return {slope_ok && smallest <= 0.5 && all_used,
          fmt("slope %.3f (band [0.175, 0.325]), factor(0.005) %.3e (<= 0.5); factors",
              t.slope, smallest) + factors};
}

// 5
Outcome uniqueness() {
  const ProblemCard& card = find_card("arctan");
  const TorusGrid g(1, 64);
  FixedPointOptions o;
  o.delta = 0.05;
  o.tol = 1e-9;
  const Perturbation bump = [](const std::array<double, 2>& x, double t, double delta,
                               std::span<double> out) {
    out[0] = 0.01 * std::sin(x[0]) * t * (delta - t);
  };
  const UniquenessResult r = verify_uniqueness(card.spec, card.initial(g), {}, bump, o);
  return {r.distance <= 1e-8, fmt("distance between fixed points %.3e (<= 1e-8)", r.distance)};
}

// 6
Outcome legendre_hadamard() {
  const TorusGrid g(1, 64);
  auto lambda = [&](const char* name) {
    const ProblemCard& card = find_card(name);
    return check_strong_ellipticity(linearize(card.spec, card.initial(g), 0.0), 0.0);
  };
  const double heat = lambda("heat").lambda;
  const double bih = lambda("biharmonic").lambda;
  const EllipticityReport back = lambda("backward_heat");
  return {std::abs(heat - 1) <= 1e-12 && std::abs(bih - 1) <= 1e-12 && !back.elliptic,
          fmt("lambda(heat) %.15f, lambda(biharmonic) %.15f, backward heat lambda %.3f elliptic=%d",
              heat, bih, back.lambda, int(back.elliptic))};
}

// 7
Outcome garding() {
  bool ok = true;
  std::string detail;
  for (int order : {2, 4}) {
    const double c = garding_constant(order, 128);
    // every lattice vector with |k| <= 128 on T^2 (covers T^1)
    double worst = INFINITY;
    for (int kx = 0; kx <= 128; ++kx) {
      for (int ky = 0; kx * kx + ky * ky <= 128 * 128; ++ky) {
        const double m = kx * kx + ky * ky;
        const double slack = std::pow(m, 0.5 * order) - 0.5 * std::pow(1 + m, 0.5 * order) + c;
        worst = std::min(worst, slack / std::max(1.0, std::pow(1 + m, 0.5 * order)));
      }
    }
    std::mt19937_64 rng(7000 + order);
    int held = 0;
    for (int i = 0; i < 100; ++i) {
      const TorusGrid g(1 + i % 2, i % 2 == 0 ? 64 : 16);
      const GridSection psi = testing_support::random_section(rng, g, 1, g.points_per_dim() / 2 - 1);
      held += check_garding(order, psi).holds(c);
    }
    ok = ok && worst >= -1e-12 && held == 100;
    if (order == 2) ok = ok && std::abs(c - 0.5) <= 1e-12;
    detail += fmt("r=%d: C=%.6g, min per-mode slack %.2e, integral holds %d/100; ", order, c, worst, held);
  }
  return {ok, detail};
}

// 8
Outcome gronwall() {
  const TorusGrid g(1, 32);
  LinearOperatorSpec op(g, JetLayout(1, 1, 2));
  op.set_field(MultiIndex(2), 0, 0, [](const std::array<double, 2>& x) { return 1.5 + 0.5 * std::sin(x[0]); });
  const SourceFn f = [g](double t, std::span<double> out) {
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double x = g.position(n)[0];
      out[n] = std::cos(x) + 0.5 * t * std::sin(2 * x);
    }
  };
  GronwallOptions opts;
  opts.spacing = 0.01;
  std::vector<double> full;
  std::vector<double> nested;
  for (int steps : {200, 400}) {
    const LinearSolution s = solve_linear({op, f, GridSection(g, 1), 0.2, steps});
    const SpaceTimeSection fs = sample_source(f, g, 1, s.u.times());
    full.push_back(gronwall_check(s.u, fs, opts).constant);
    if (steps == 400) {
      for (double T : {0.05, 0.1, 0.2}) {
        const std::size_t levels = static_cast<std::size_t>(std::lround(T / 0.2 * steps)) + 1;
        nested.push_back(gronwall_check(s.u.leading(levels), fs.leading(levels), opts).constant);
      }
    }
  }
  const double drift = std::abs(full[1] - full[0]) / full[0];
  const bool monotone = nested[0] <= nested[1] && nested[1] <= nested[2];
  return {std::isfinite(full[0]) && std::isfinite(full[1]) && drift < 0.1 && monotone,
          fmt("C %.4e -> %.4e under dt halving (drift %.2f%% < 10%%), nested C %.4e <= %.4e <= %.4e",
              full[0], full[1], 100 * drift, nested[0], nested[1], nested[2])};
}

// 9
Outcome schauder() {
  const HolderExponent alpha(0.5);
  const TorusGrid g(1, 32);
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> ratios;
  for (int i = 0; i < 20; ++i) {
    // leading coefficient in [0.6, 1.4], bounded lower-order terms
    const double a1 = unit(rng), a2 = unit(rng), p1 = 6.3 * unit(rng), p2 = 6.3 * unit(rng);
    const double b = unit(rng) - 0.5, c = unit(rng) - 0.5;
    LinearOperatorSpec op(g, JetLayout(1, 1, 2));
    op.set_field(MultiIndex(2), 0, 0, [=](const std::array<double, 2>& x) {
      return 1 + 0.4 * (a1 * std::cos(x[0] + p1) + a2 * std::cos(2 * x[0] + p2)) / (a1 + a2);
    });
    op.set_field(MultiIndex(1), 0, 0, [=](const std::array<double, 2>& x) { return b * std::cos(x[0]); });
    op.set_constant(MultiIndex(0), Eigen::MatrixXd::Constant(1, 1, c));
    // the ratio is invariant under scaling the data; unit size keeps the residual limit meaningful
    GridSection u0 = testing_support::random_section(rng, g, 1, 3);
    u0 *= 1.0 / u0.sup_norm();
    SpaceTimeSection fs = testing_support::random_space_time(rng, g, 1, 3, uniform_times(0.05, 100));
    fs *= 1.0 / fs.sup_norm();
    const LinearProblem problem{op, source_from_section(fs), u0, 0.05, 100};
    StepperConfig config;
    config.dt = 2.5e-5;
    ratios.push_back(schauder_ratio(problem, solve_linear(problem, config), alpha));
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[9] + sorted[10]);
  const double max = sorted.back();

  const ProblemCard& heat = find_card("heat");
  std::vector<double> heat_ratio;
  for (int n : {32, 64}) {
    const TorusGrid hg(1, n);
    const GridSection u0 = heat.initial(hg);
    const LinearProblem problem{linearize(heat.spec, u0, 0.0), zero_source(), u0, 0.05, n * 3};
    StepperConfig config;
    config.dt = 1e-4 * 32 / n;
    heat_ratio.push_back(schauder_ratio(problem, solve_linear(problem, config), alpha));
  }
  const double change = std::max(heat_ratio[0] / heat_ratio[1], heat_ratio[1] / heat_ratio[0]);
  return {max <= 10 * median && change < 2,
          fmt("random ratios max %.4g <= 10 x median %.4g; heat ratio %.4g -> %.4g (x%.3f < 2)",
              max, median, heat_ratio[0], heat_ratio[1], change)};
}

// 10
Outcome interpolation() {
  const HolderExponent alpha(0.5);
  const int order = 2;
  auto sections = [](int n) {
    std::vector<SpaceTimeSection> out;
    const TorusGrid g(1, n);
    for (int i = 0; i < 100; ++i) {
      std::mt19937_64 rng(10000 + i);
      out.push_back(testing_support::random_space_time(rng, g, 1, 3, uniform_times(0.1, n / 2)));
    }
    return out;
  };
  const auto coarse = sections(16);
  const auto fine = sections(32);
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.01}) {
    double constant[2] = {0.0, 0.0};
    int held[2] = {0, 0};
    for (int level = 0; level < 2; ++level) {
      const auto& batch = level == 0 ? coarse : fine;
      std::vector<InterpolationCheck> checks;
      for (const auto& u : batch) checks.push_back(verify_interpolation(u, order, alpha, eps));
      for (const auto& c : checks) constant[level] = std::max(constant[level], c.constant);
      for (const auto& c : checks) held[level] += interpolation_with_constant(c, constant[level]).holds;
    }
    const double change = std::max(constant[0] / constant[1], constant[1] / constant[0]);
    ok = ok && held[0] == 100 && held[1] == 100 && change < 2;
    detail += fmt("eps=%g: C %.4g (N=16) -> %.4g (N=32), x%.3f < 2, holds %d+%d/200; ", eps,
                  constant[0], constant[1], change, held[0], held[1]);
  }
  return {ok, detail};
}

// 11
Outcome transport() {
  const double length = 2 * M_PI;
  const Eigen::Vector2d v0(0.6, 0.8);
  const TransportResult r = parallel_transport(rotation_connection(), unit_speed_circle(length), v0, 0.01);
  double err = 0.0;
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    const double s = r.s[i];
    const Eigen::Vector2d exact(std::cos(s) * v0[0] - std::sin(s) * v0[1],
                                std::sin(s) * v0[0] + std::cos(s) * v0[1]);
    err = std::max(err, (r.samples[i] - exact).norm());
  }
  return {err <= 1e-8 && r.max_norm_drift <= 1e-8,
          fmt("closed-form err %.3e (<= 1e-8), norm drift %.3e (<= 1e-8)", err, r.max_norm_drift)};
}

// 12
Outcome bootstrap() {
  const HolderExponent alpha(0.5);
  const TorusGrid g(1, 64);
  const double dx = g.spacing();
  const std::vector<double> h{4 * dx, 2 * dx, dx};

  const ProblemCard& smooth_card = find_card("semilinear");
  const SolveResult smooth = solve_nonlinear(smooth_card.spec, smooth_card.initial(g), {});
  const BootstrapReport a = bootstrap_diagnostic(smooth.solution, 2, alpha, h);

  // mode 3: sinc(3h/2) alone moves the quotient by 4.5% between h = 4dx and 2dx
  FixedPointOptions heat_options;
  heat_options.delta = 0.1;
  const ProblemCard& heat = find_card("heat");
  const SolveResult mode3 = solve_nonlinear(heat.spec, heat.initial(g), heat_options);
  const BootstrapReport c = bootstrap_diagnostic(mode3.solution, 2, alpha, h);

  const ProblemCard& arctan = find_card("arctan");
  const SolveResult rough = solve_nonlinear(arctan.spec, arctan.initial(g), {});
  const BootstrapReport b = bootstrap_diagnostic(rough.solution, 2, alpha, h);

  return {a.drift[0] <= 0.05 && b.ratio[0] <= 3.0,
          fmt("semilinear drift %.2f%% (<= 5%%); arctan max |u_h| / |d_x u| = %.3f (<= 3); "
              "heat (not gated) drift %.2f%%",
              100 * a.drift[0], b.ratio[0], 100 * c.drift[0])};
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "heat decay", 5, heat_decay},
      {2, "biharmonic decay", 5, biharmonic_decay},
      {3, "fully nonlinear convergence", 60, arctan_convergence},
      {4, "contraction scaling", 120, contraction_scaling},
      {5, "uniqueness", 120, uniqueness},
      {6, "Legendre-Hadamard", 1, legendre_hadamard},
      {7, "Garding", 5, garding},
      {8, "Gronwall", 30, gronwall},
      {9, "Schauder ratio", 120, schauder},
      {10, "interpolation", 60, interpolation},
      {11, "parallel transport", 1, transport},
      {12, "bootstrap", 30, bootstrap},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.pass && seconds < c.budget;
    failures += !pass;
    std::printf("[%s] %2d %-28s %7.2f s (< %g s)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                c.budget, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
