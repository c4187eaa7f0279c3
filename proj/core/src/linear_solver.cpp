#include "parabolic/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parabolic/ellipticity.hpp"
#include "parabolic/error.hpp"
#include "parabolic/fourier.hpp"

namespace parabolic {

SourceFn source_from_section(const SpaceTimeSection& f) {
  return [f](double t, std::span<double> out) {
    const auto& times = f.times();
    if (out.size() != f.slice_size()) throw InvalidArgument("source slice has the wrong size");
    if (times.size() == 1 || t <= times.front()) {
      std::ranges::copy(f.level(0), out.begin());
      return;
    }
    if (t >= times.back()) {
      std::ranges::copy(f.level(times.size() - 1), out.begin());
      return;
    }
    const std::size_t hi = std::upper_bound(times.begin(), times.end(), t) - times.begin();
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    auto a = f.level(lo);
    auto b = f.level(hi);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * a[k] + w * b[k];
  };
}

SourceFn zero_source() {
  return [](double, std::span<double> out) { std::ranges::fill(out, 0.0); };
}

SpaceTimeSection sample_source(const SourceFn& f, const TorusGrid& grid, int rank,
                               const std::vector<double>& times) {
  SpaceTimeSection out(grid, rank, times);
  for (std::size_t m = 0; m < times.size(); ++m) f(times[m], out.level(m));
  return out;
}

namespace {

// One exponential-Euler step for w' = c S w + n(w, t), S having multiplier -|k|^r.
class ExponentialStep {
 public:
  ExponentialStep(const TorusGrid& grid, int order, double shift, double dt)
      : fft_(fourier_for(grid)) {
    const std::size_t bins = grid.size();
    decay_.resize(bins);
    weight_.resize(bins);
    stiff_.resize(bins);
    for (std::size_t bin = 0; bin < bins; ++bin) {
      const double kr = std::pow(fft_.wavenumber_squared(bin), 0.5 * order);
      const double z = -shift * kr * dt;
      decay_[bin] = std::exp(z);
      weight_[bin] = z == 0.0 ? dt : dt * std::expm1(z) / z;
      stiff_[bin] = shift * kr;
    }
  }

  /// w <- e^{z} w + dt phi1(z) (n + c |k|^r w), where n = (L - cS) w + f has
  /// already been reduced to `explicit_part` = L w + f.
  void advance(GridSection& w, const GridSection& explicit_part) { advance(w, explicit_part, 1.0); }

  /// w <- e^{z} w + dt phi1(z) f, exact for du/dt = -c |k|^r u + f with f constant.
  void advance_principal(GridSection& w, const GridSection& f) { advance(w, f, 0.0); }

 private:
  void advance(GridSection& w, const GridSection& explicit_part, double stiff_scale) {
    const int rank = w.rank();
    for (int b = 0; b < rank; ++b) {
      fft_.forward(w.values(), rank, b, state_);
      fft_.forward(explicit_part.values(), rank, b, forcing_);
      for (std::size_t bin = 0; bin < state_.size(); ++bin) {
        state_[bin] = decay_[bin] * state_[bin] +
                      weight_[bin] * (forcing_[bin] + stiff_scale * stiff_[bin] * state_[bin]);
      }
      fft_.backward(state_, w.values(), rank, b);
    }
  }

  FourierTransform& fft_;
  std::vector<double> decay_;
  std::vector<double> weight_;
  std::vector<double> stiff_;
  Spectrum state_;
  Spectrum forcing_;
};

void add_source(const SourceFn& f, double t, GridSection& target, std::vector<double>& scratch) {
  scratch.resize(target.values().size());
  f(t, scratch);
  auto v = target.values();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += scratch[k];
}

void require_order(int order) {
  if (order < 2 || order % 2 != 0) throw InvalidArgument("order must be even and >= 2");
}

}  // namespace

double auto_shift(const LinearOperatorSpec& op) {
  const double bound = top_symbol_bound(op);
  return bound > 0.0 ? 1.05 * bound : 1.0;
}

SpaceTimeSection solve_principal(int order, const SourceFn& f, const GridSection& u0,
                                 double horizon, int steps) {
  require_order(order);
  if (!(horizon > 0.0) || steps < 1) throw InvalidArgument("horizon and steps must be positive");
  if (!u0.all_finite()) throw InvalidArgument("initial value contains non-finite entries");
  const SourceFn source = f ? f : zero_source();
  SpaceTimeSection u(u0.grid(), u0.rank(), uniform_times(horizon, steps));
  u.set_slice(0, u0);
  const double dt = horizon / steps;
  ExponentialStep step(u0.grid(), order, 1.0, dt);
  GridSection w = u0;
  GridSection forcing(u0.grid(), u0.rank());
  for (int m = 0; m < steps; ++m) {
    source(u.times()[m], forcing.values());
    step.advance_principal(w, forcing);
    u.set_slice(m + 1, w);
  }
  return u;
}

double linear_residual(const LinearOperatorSpec& op, const SourceFn& f,
                       const SpaceTimeSection& u) {
  const SourceFn source = f ? f : zero_source();
  const auto& times = u.times();
  if (times.size() < 2) return 0.0;
  std::vector<double> scratch;
  double worst = 0.0;
  auto probe = [&](std::size_t m, std::size_t lo, std::size_t hi) {
    GridSection rhs = op.apply(u.slice(m), times[m]);
    add_source(source, times[m], rhs, scratch);
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

LinearSolution solve_linear(const LinearProblem& problem, const StepperConfig& config) {
  const LinearOperatorSpec& op = problem.op;
  require_order(op.order());
  if (!(op.grid() == problem.u0.grid()) || op.rank() != problem.u0.rank()) {
    throw InvalidArgument("operator and initial value live on different bundles");
  }
  if (!(problem.horizon > 0.0) || problem.steps < 1) {
    throw InvalidArgument("horizon and steps must be positive");
  }
  if (!problem.u0.all_finite() || !op.all_finite()) {
    throw InvalidArgument("linear problem contains non-finite data");
  }
  if (config.check_ellipticity) {
    for (std::size_t s = 0; s < op.slice_count(); ++s) {
      const EllipticityReport report = check_strong_ellipticity(op, op.slice_time(s));
      if (!report.elliptic) throw NotElliptic(report.lambda);
    }
  }
  const SourceFn source = problem.source ? problem.source : zero_source();
  const double shift = config.shift > 0.0 ? config.shift : auto_shift(op);

  const std::vector<double> times = uniform_times(problem.horizon, problem.steps);
  const double interval = problem.horizon / problem.steps;
  const double target = config.dt > 0.0 ? config.dt : interval;
  long substeps = std::max(1L, static_cast<long>(std::ceil(interval / target - 1e-9)));

  std::vector<double> scratch;
  for (int halving = 0;; ++halving) {
    const double dt = interval / substeps;
    ExponentialStep step(op.grid(), op.order(), shift, dt);
    SpaceTimeSection u(op.grid(), op.rank(), times);
    u.set_slice(0, problem.u0);
    GridSection w = problem.u0;
    bool blew_up = false;
    for (int m = 0; m < problem.steps && !blew_up; ++m) {
      for (long k = 0; k < substeps; ++k) {
        const double t = times[m] + k * dt;
        GridSection rhs = op.apply(w, t);
        add_source(source, t, rhs, scratch);
        step.advance(w, rhs);
        if (!w.all_finite() || w.sup_norm() > config.blowup) {
          blew_up = true;
          break;
        }
      }
      if (!blew_up) u.set_slice(m + 1, w);
    }
    if (!blew_up) {
      LinearSolution out{std::move(u), 0.0, dt, shift, halving};
      out.residual = linear_residual(op, source, out.u);
      return out;
    }
    if (halving >= config.max_halvings) throw InstabilityError(dt);
    substeps *= 2;
  }
}

bool GardingCheck::holds(double constant) const {
  const double rhs = 0.5 * sobolev_half - constant * l2;
  return lhs >= rhs - 1e-12 * std::max(1.0, sobolev_half);
}

GardingCheck check_garding(int order, const GridSection& psi) {
  require_order(order);
  if (!psi.all_finite()) throw InvalidArgument("psi contains non-finite values");
  FourierTransform& fft = fourier_for(psi.grid());
  const double vol = psi.grid().volume();
  GardingCheck out;
  Spectrum coeffs;
  for (int b = 0; b < psi.rank(); ++b) {
    fft.forward(psi.values(), psi.rank(), b, coeffs);
    for (std::size_t bin = 0; bin < coeffs.size(); ++bin) {
      const double k2 = fft.wavenumber_squared(bin);
      const double e = std::norm(coeffs[bin]);
      out.lhs += std::pow(k2, 0.5 * order) * e;
      out.sobolev_half += std::pow(1.0 + k2, 0.5 * order) * e;
      out.l2 += e;
    }
  }
  out.lhs *= vol;
  out.sobolev_half *= vol;
  out.l2 *= vol;
  return out;
}

double garding_constant(int order, int kmax) {
  require_order(order);
  if (kmax < 0) throw InvalidArgument("kmax must be non-negative");
  double c = 0.0;
  const long top = static_cast<long>(kmax) * kmax;
  for (long m = 0; m <= top; ++m) {
    const double x = static_cast<double>(m);
    c = std::max(c, 0.5 * std::pow(1.0 + x, 0.5 * order) - std::pow(x, 0.5 * order));
  }
  return c;
}

GronwallReport gronwall_check(const SpaceTimeSection& u, const SpaceTimeSection& f,
                              const GronwallOptions& options) {
  if (!u.same_shape(f)) throw InvalidArgument("u and f must share grid, rank and times");
  if (u.levels() < 2) throw InvalidArgument("Gronwall check needs at least two time levels");
  if (!(options.spacing > 0.0)) throw InvalidArgument("sample spacing must be positive");
  double initial = 0.0;
  for (double x : u.level(0)) initial = std::max(initial, std::abs(x));
  if (initial > 1e-10) throw InvalidArgument("Gronwall check requires u(., 0) = 0");

  const HolderExponent alpha(options.alpha);
  const SpaceTimeSection du = time_derivative(u);
  const double vol = u.grid().volume();
  const auto& times = u.times();

  std::vector<std::size_t> picks;
  for (std::size_t m = 1; m < times.size(); ++m) {
    const double q = times[m] / options.spacing;
    if (std::abs(q - std::round(q)) <= 1e-6) picks.push_back(m);
  }
  if (picks.empty()) picks.push_back(times.size() - 1);

  GronwallReport report;
  double dt_sup = 0.0;
  std::size_t scanned = 0;
  for (std::size_t m : picks) {
    for (; scanned <= m; ++scanned) {
      for (double x : du.level(scanned)) dt_sup = std::max(dt_sup, std::abs(x));
    }
    double energy = 0.0;
    for (double x : u.level(m)) energy += x * x;
    const double v = vol * energy / static_cast<double>(u.grid().size());
    const double fn = parabolic_lower_norm(f.leading(m + 1), options.order, alpha, options.holder);
    report.s.push_back(times[m]);
    report.v.push_back(v);
    report.source_norm.push_back(fn);
    report.max_v = std::max(report.max_v, v);
    if (fn > 0.0) {
      report.constant = std::max(report.constant, v / (fn * fn));
    } else if (v > 0.0) {
      report.constant = std::numeric_limits<double>::infinity();
    }
    const double bound = times[m] * times[m] * vol * dt_sup * dt_sup;
    if (v > bound * (1.0 + 1e-9) + 1e-300) report.intermediate_bound = false;
  }
  return report;
}

double schauder_ratio(const LinearProblem& problem, const LinearSolution& solution,
                      HolderExponent alpha, const HolderOptions& options, double residual_limit) {
  if (!(solution.residual <= residual_limit)) {
    throw ResidualTooLarge(solution.residual, residual_limit);
  }
  const int order = problem.op.order();
  const SourceFn source = problem.source ? problem.source : zero_source();
  const SpaceTimeSection f =
      sample_source(source, problem.u0.grid(), problem.u0.rank(), solution.u.times());
  const double num = parabolic_holder_norm(solution.u, order, alpha, options).total;
  const double den = parabolic_lower_norm(f, order, alpha, options) +
                     spatial_holder_norm(problem.u0, order, alpha, options);
  constexpr double kFloor = 1e-14;
  if (den < kFloor) return num <= kFloor ? 0.0 : num / kFloor;
  return num / den;
}

}  // namespace parabolic
