#include "parabolic/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parabolic/ellipticity.hpp"
#include "parabolic/error.hpp"
#include "parabolic/fourier.hpp"

namespace parabolic {

namespace {

double parabolic_norm(const SpaceTimeSection& u, int order, HolderExponent alpha,
                      const HolderOptions& options) {
  return parabolic_holder_norm(u, order, alpha, options).total;
}

void require_uniform(const std::vector<double>& times) {
  if (times.size() < 2) throw InvalidArgument("horizon needs at least two time levels");
  const std::vector<double> expected = uniform_times(times.back(), static_cast<int>(times.size() - 1));
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (std::abs(times[m] - expected[m]) > 1e-12 * times.back()) {
      throw InvalidArgument("time levels must be uniform and start at 0");
    }
  }
}

double initial_gap(const SpaceTimeSection& u, const GridSection& u0) {
  double gap = 0.0;
  auto a = u.level(0);
  auto b = u0.values();
  for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, std::abs(a[k] - b[k]));
  return gap;
}

// Centered difference at interior levels, forward difference when only two exist.
template <class Rhs>
double residual_against(const SpaceTimeSection& u, Rhs&& rhs_at) {
  const auto& times = u.times();
  double worst = 0.0;
  auto probe = [&](std::size_t m, std::size_t lo, std::size_t hi) {
    const GridSection rhs = rhs_at(m);
    const double span = times[hi] - times[lo];
    auto a = u.level(lo);
    auto b = u.level(hi);
    auto r = rhs.values();
    for (std::size_t k = 0; k < r.size(); ++k) {
      worst = std::max(worst, std::abs((b[k] - a[k]) / span - r[k]));
    }
  };
  if (times.size() == 2) {
    probe(0, 0, 1);
  } else {
    for (std::size_t m = 1; m + 1 < times.size(); ++m) probe(m, m - 1, m + 1);
  }
  return worst;
}

}  // namespace

SpaceTimeSection ball_member(const GridSection& u0, const std::vector<double>& times,
                             const Perturbation& perturbation) {
  SpaceTimeSection u = SpaceTimeSection::constant_extension(u0, times);
  if (!perturbation) return u;
  const double delta = times.back();
  const int l = u0.rank();
  std::vector<double> p(l);
  for (std::size_t m = 0; m < times.size(); ++m) {
    for (std::size_t node = 0; node < u0.grid().size(); ++node) {
      perturbation(u0.grid().position(node), times[m], delta, p);
      for (int b = 0; b < l; ++b) u(m, node, b) += p[b];
    }
  }
  return u;
}

Membership ball_membership(const BallSpec& ball, const SpaceTimeSection& u, int order,
                           HolderExponent alpha, const HolderOptions& options) {
  Membership out;
  out.initial_gap = initial_gap(u, ball.u0);
  const SpaceTimeSection base = SpaceTimeSection::constant_extension(ball.u0, u.times());
  out.distance = parabolic_norm(u - base, order, alpha, options);
  out.inside = out.initial_gap <= 1e-12 * std::max(1.0, ball.u0.sup_norm()) &&
               out.distance <= ball.radius * (1.0 + 1e-12);
  return out;
}

ContractionMap::ContractionMap(const NonlinearOperatorSpec& spec, const GridSection& u0,
                               std::vector<double> times)
    : spec_(spec),
      u0_(u0),
      times_(std::move(times)),
      frozen_((spec.validate(), linearize(spec, u0, 0.0))),
      tube_(spectral_jet(u0, spec.order), spec.tube_radius) {
  if (u0.rank() != spec.rank || u0.grid().dim() != spec.dim) {
    throw InvalidArgument("initial value does not match the operator");
  }
  require_uniform(times_);
  const EllipticityReport report = check_strong_ellipticity(frozen_, 0.0);
  lambda_ = report.lambda;
  if (!report.elliptic) throw NotElliptic(report.lambda);
  shift_ = auto_shift(frozen_);
}

ContractionMap::Evaluation ContractionMap::evaluate(const SpaceTimeSection& u) const {
  if (!(u.grid() == u0_.grid()) || u.rank() != u0_.rank() || u.times() != times_) {
    throw InvalidArgument("iterate does not live on the map's space-time grid");
  }
  Evaluation out{SpaceTimeSection(u.grid(), u.rank(), times_), 0.0, 0.0};
  SpaceTimeSection source(u.grid(), u.rank(), times_);
  SpaceTimeSection values(u.grid(), u.rank(), times_);
  for (std::size_t m = 0; m < times_.size(); ++m) {
    const JetField jets = spectral_jet(u.slice(m), spec_.order);
    out.tube_distance = std::max(out.tube_distance, tube_.distance(jets));
    tube_.require_inside(jets);
    const GridSection f = evaluate_on_jets(spec_, jets, times_[m]);
    const GridSection lu = frozen_.apply(jets, 0.0);
    values.set_slice(m, f);
    source.set_slice(m, f - lu);
  }
  out.input_residual =
      residual_against(u, [&](std::size_t m) { return values.slice(m); });

  StepperConfig config;
  config.shift = shift_;
  config.check_ellipticity = false;
  LinearProblem problem{frozen_, source_from_section(source), u0_, times_.back(),
                        static_cast<int>(times_.size() - 1)};
  out.image = solve_linear(problem, config).u;
  return out;
}

SpaceTimeSection contraction_map(const NonlinearOperatorSpec& spec, const BallSpec& ball,
                                 const SpaceTimeSection& u) {
  NonlinearOperatorSpec local = spec;
  if (ball.tube_radius > 0.0) local.tube_radius = ball.tube_radius;
  return ContractionMap(local, ball.u0, u.times())(u);
}

double nonlinear_residual(const NonlinearOperatorSpec& spec, const SpaceTimeSection& u) {
  if (u.levels() < 2) throw InvalidArgument("residual needs at least two time levels");
  return residual_against(
      u, [&](std::size_t m) { return evaluate_operator(spec, u.slice(m), u.times()[m]); });
}

SolveResult solve_nonlinear(const NonlinearOperatorSpec& spec, const GridSection& u0,
                            const FixedPointOptions& options, const Perturbation& start) {
  spec.validate();
  if (!(options.delta > 0.0) || !(options.dt > 0.0) || !(options.tol > 0.0)) {
    throw InvalidArgument("delta, dt and tol must be positive");
  }
  if (options.max_iter < 1) throw InvalidArgument("max_iter must be positive");
  const HolderExponent alpha(options.alpha);
  const int order = spec.order;
  auto norm = [&](const SpaceTimeSection& a) {
    return parabolic_norm(a, order, alpha, options.holder);
  };

  ContractionTrace trace;
  double delta = options.delta;
  for (int halving = 0;; ++halving) {
    const int steps = std::max(2, static_cast<int>(std::lround(delta / options.dt)));
    const std::vector<double> times = uniform_times(delta, steps);
    // Ellipticity failures propagate: halving cannot repair them.
    const ContractionMap map(spec, u0, times);
    const SpaceTimeSection base = ball_member(u0, times);
    bool converged = false;
    SpaceTimeSection u = base;
    double residual = 0.0;
    int iterations = 0;
    double radius = 0.0;
    try {
      const ContractionMap::Evaluation first_eval = map.evaluate(base);
      const double first = norm(first_eval.image - base);
      radius = std::max(4.0 * first, 1e-12);
      if (start) u = ball_member(u0, times, start);
      const double half_tube = 0.5 * spec.tube_radius;
      double previous = 0.0;
      for (int k = 0; k < options.max_iter; ++k) {
        const ContractionMap::Evaluation ev =
            (k == 0 && !start) ? first_eval : map.evaluate(u);
        const double d = norm(ev.image - u);
        IterationRecord rec;
        rec.iter = k;
        rec.distance = d;
        rec.factor = k == 0 ? 0.0 : (previous > 0.0 ? d / previous : 0.0);
        rec.tube_margin = half_tube - ev.tube_distance;
        rec.residual = ev.input_residual;
        rec.ball_distance = norm(u - base);
        rec.cond31 = ev.tube_distance <= half_tube;
        rec.cond33 = rec.factor <= 0.5;
        rec.cond37 = 0.5 * radius >= first;
        rec.member = rec.ball_distance <= radius * (1.0 + 1e-12) &&
                     initial_gap(u, u0) <= 1e-12 * std::max(1.0, u0.sup_norm());
        rec.delta = delta;
        trace.records.push_back(rec);
        iterations = k + 1;
        if (!rec.member || !rec.cond31) break;
        if (d <= options.tol) {
          converged = true;
          residual = ev.input_residual;
          break;
        }
        if (!rec.cond33) break;
        previous = d;
        u = ev.image;
      }
    } catch (const TubeViolation&) {
      converged = false;
    } catch (const InstabilityError&) {
      converged = false;
    }

    if (converged) {
      trace.delta = delta;
      trace.radius = radius;
      trace.halvings = halving;
      SolveResult result{u, trace, residual, residual <= options.residual_tol,
                         parabolic_holder_norm(u, order, alpha, options.holder), iterations,
                         map.lambda()};
      return result;
    }
    if (halving >= options.max_halvings) {
      throw NoContractionHorizon("no contraction horizon found after " +
                                 std::to_string(halving) + " halvings (delta = " +
                                 std::to_string(delta) + ")");
    }
    delta *= 0.5;
  }
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / den;
}

ContractionTable measure_contraction(const NonlinearOperatorSpec& spec, const GridSection& u0,
                                     const std::vector<PerturbationPair>& pairs,
                                     const std::vector<double>& deltas,
                                     const FixedPointOptions& options) {
  spec.validate();
  const HolderExponent alpha(options.alpha);
  auto norm = [&](const SpaceTimeSection& a) {
    return parabolic_norm(a, spec.order, alpha, options.holder);
  };
  ContractionTable table;
  std::vector<double> xs, ys;
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw InvalidArgument("delta values must be positive");
    const int steps = std::max(2, static_cast<int>(std::lround(delta / options.dt)));
    const std::vector<double> times = uniform_times(delta, steps);
    const ContractionMap map(spec, u0, times);
    const SpaceTimeSection base = ball_member(u0, times);
    ContractionRow row;
    row.delta = delta;
    row.radius = std::max(4.0 * norm(map(base) - base), 1e-12);
    const BallSpec ball{u0, row.radius, delta, spec.tube_radius};
    for (const PerturbationPair& pair : pairs) {
      const SpaceTimeSection u = ball_member(u0, times, pair.first);
      const SpaceTimeSection v = ball_member(u0, times, pair.second);
      if (!ball_membership(ball, u, spec.order, alpha, options.holder).inside ||
          !ball_membership(ball, v, spec.order, alpha, options.holder).inside) {
        ++row.pairs_skipped;
        continue;
      }
      const double gap = norm(u - v);
      if (gap == 0.0) {
        ++row.pairs_skipped;
        continue;
      }
      try {
        row.factor = std::max(row.factor, norm(map(u) - map(v)) / gap);
        ++row.pairs_used;
      } catch (const TubeViolation&) {
        ++row.pairs_skipped;
      }
    }
    table.rows.push_back(row);
    if (row.pairs_used > 0) {
      xs.push_back(delta);
      ys.push_back(row.factor);
    }
  }
  table.slope = log_log_slope(xs, ys);
  return table;
}

UniquenessResult verify_uniqueness(const NonlinearOperatorSpec& spec, const GridSection& u0,
                                   const Perturbation& first, const Perturbation& second,
                                   const FixedPointOptions& options) {
  FixedPointOptions fixed = options;
  fixed.max_halvings = 0;
  UniquenessResult out{0.0, false, solve_nonlinear(spec, u0, fixed, first),
                       solve_nonlinear(spec, u0, fixed, second)};
  out.distance = parabolic_norm(out.first.solution - out.second.solution, spec.order,
                                HolderExponent(options.alpha), options.holder);
  out.unique = out.distance <= 10.0 * options.tol;
  return out;
}

BootstrapReport bootstrap_diagnostic(const SpaceTimeSection& u, int order, HolderExponent alpha,
                                     const std::vector<double>& h_values,
                                     const HolderOptions& options) {
  const TorusGrid& grid = u.grid();
  const double dx = grid.spacing();
  std::vector<int> multiples;
  for (double h : h_values) {
    const double q = h / dx;
    const long m = std::lround(q);
    if (!(h > 0.0) || m < 1 || std::abs(q - m) > 1e-9 * std::max(1.0, q)) {
      throw InvalidArgument("difference-quotient step must be a positive multiple of the spacing");
    }
    multiples.push_back(static_cast<int>(m));
  }

  BootstrapReport report;
  const int l = u.rank();
  for (int axis = 0; axis < grid.dim(); ++axis) {
    SpaceTimeSection derivative(grid, l, u.times());
    const MultiIndex index = axis == 0 ? MultiIndex(1, 0) : MultiIndex(0, 1);
    for (std::size_t m = 0; m < u.levels(); ++m) {
      derivative.set_slice(m, differentiate(u.slice(m), index));
    }
    const double reference = parabolic_norm(derivative, order, alpha, options);
    report.derivative_norm.push_back(reference);

    double drift = 0.0, worst = 0.0, previous = -1.0;
    for (std::size_t j = 0; j < multiples.size(); ++j) {
      const double h = multiples[j] * dx;
      SpaceTimeSection quotient(grid, l, u.times());
      for (std::size_t m = 0; m < u.levels(); ++m) {
        for (std::size_t node = 0; node < grid.size(); ++node) {
          const std::size_t ahead = grid.shifted(node, axis, multiples[j]);
          for (int b = 0; b < l; ++b) quotient(m, node, b) = (u(m, ahead, b) - u(m, node, b)) / h;
        }
      }
      const double n = parabolic_norm(quotient, order, alpha, options);
      report.rows.push_back({axis, multiples[j], h, n});
      if (previous > 0.0) drift = std::max(drift, std::abs(n - previous) / previous);
      previous = n;
      worst = std::max(worst, n);
    }
    report.drift.push_back(drift);
    report.ratio.push_back(reference > 0.0 ? worst / reference
                                           : (worst > 0.0 ? std::numeric_limits<double>::infinity()
                                                          : 0.0));
  }
  return report;
}

}  // namespace parabolic
