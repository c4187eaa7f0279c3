#include "parabolic/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <random>

#include "parabolic/error.hpp"
#include "parabolic/jet.hpp"

namespace parabolic {

HolderExponent::HolderExponent(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("Hoelder exponent must lie in (0, 1)");
}

PairSampler::PairSampler(const TorusGrid& grid, std::span<const double> times, int order,
                         HolderExponent alpha, const HolderOptions& options) {
  const std::size_t nodes = grid.size();
  const std::size_t levels = times.size();
  const std::size_t points = nodes * levels;
  const double a = alpha.value();
  const double time_power = 1.0 / order;

  auto add = [&](std::size_t p, std::size_t q) {
    const std::size_t lp = p / nodes, lq = q / nodes;
    const double d = grid.distance(p % nodes, q % nodes) +
                     std::pow(std::abs(times[lp] - times[lq]), time_power);
    if (d <= 0.0) return;
    first_.push_back(static_cast<std::uint32_t>(p));
    second_.push_back(static_cast<std::uint32_t>(q));
    weight_.push_back(std::pow(d, -a));
  };

  const std::size_t all_pairs = points * (points - 1) / 2;
  if (all_pairs <= options.pair_budget) {
    exhaustive_ = true;
    first_.reserve(all_pairs);
    second_.reserve(all_pairs);
    weight_.reserve(all_pairs);
    for (std::size_t p = 0; p < points; ++p) {
      for (std::size_t q = p + 1; q < points; ++q) add(p, q);
    }
    return;
  }

  for (std::size_t level = 0; level < levels; ++level) {
    for (std::size_t node = 0; node < nodes; ++node) {
      const std::size_t p = level * nodes + node;
      for (int axis = 0; axis < grid.dim(); ++axis) {
        add(p, level * nodes + grid.shifted(node, axis, 1));
      }
      if (level + 1 < levels) add(p, p + nodes);
    }
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, points - 1);
  for (std::size_t k = 0; k < options.pair_budget; ++k) {
    const std::size_t p = pick(rng);
    std::size_t q = pick(rng);
    if (q == p) q = (p + 1) % points;
    add(p, q);
  }
}

double PairSampler::seminorm(std::span<const double> field, int channels) const {
  double best = 0.0;
  const std::size_t c = static_cast<std::size_t>(channels);
  for (std::size_t k = 0; k < first_.size(); ++k) {
    const double* fp = field.data() + first_[k] * c;
    const double* fq = field.data() + second_[k] * c;
    double diff = 0.0;
    for (std::size_t ch = 0; ch < c; ++ch) diff = std::max(diff, std::abs(fp[ch] - fq[ch]));
    best = std::max(best, diff * weight_[k]);
  }
  return best;
}

namespace {

struct SamplerKey {
  int dim;
  int n;
  std::vector<double> times;
  int order;
  double alpha;
  std::size_t budget;
  std::uint64_t seed;
  bool operator==(const SamplerKey&) const = default;
};

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

const PairSampler& pair_sampler_for(const TorusGrid& grid, std::span<const double> times,
                                    int order, HolderExponent alpha,
                                    const HolderOptions& options) {
  thread_local std::list<std::pair<SamplerKey, PairSampler>> cache;
  SamplerKey key{grid.dim(),
                 grid.points_per_dim(),
                 std::vector<double>(times.begin(), times.end()),
                 order,
                 alpha.value(),
                 options.pair_budget,
                 options.seed};
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    if (it->first == key) {
      cache.splice(cache.begin(), cache, it);
      return cache.front().second;
    }
  }
  cache.emplace_front(std::move(key), PairSampler(grid, times, order, alpha, options));
  if (cache.size() > 6) cache.pop_back();
  return cache.front().second;
}

std::vector<std::pair<std::string, double>> HolderNormReport::key_values() const {
  std::vector<std::pair<std::string, double>> kv;
  for (std::size_t j = 0; j < sup_norms.size(); ++j) {
    kv.emplace_back("sup_d" + std::to_string(j), sup_norms[j]);
  }
  kv.emplace_back("sup_dt", time_derivative_sup);
  kv.emplace_back("seminorm_dr", spatial_seminorm);
  kv.emplace_back("seminorm_dt", time_seminorm);
  kv.emplace_back("total", total);
  kv.emplace_back("pairs_examined", static_cast<double>(pairs_examined));
  return kv;
}

SpaceTimeSection time_derivative(const SpaceTimeSection& u) {
  const std::size_t levels = u.levels();
  if (levels < 2) throw InvalidArgument("time derivative needs at least two time levels");
  SpaceTimeSection du(u.grid(), u.rank(), u.times());
  const double dt = u.time_step();
  const std::size_t width = u.slice_size();
  for (std::size_t m = 0; m < levels; ++m) {
    auto out = du.level(m);
    for (std::size_t k = 0; k < width; ++k) {
      double d;
      if (levels == 2) {
        d = (u.level(1)[k] - u.level(0)[k]) / dt;
      } else if (m == 0) {
        d = (-3.0 * u.level(0)[k] + 4.0 * u.level(1)[k] - u.level(2)[k]) / (2.0 * dt);
      } else if (m + 1 == levels) {
        d = (3.0 * u.level(m)[k] - 4.0 * u.level(m - 1)[k] + u.level(m - 2)[k]) / (2.0 * dt);
      } else {
        d = (u.level(m + 1)[k] - u.level(m - 1)[k]) / (2.0 * dt);
      }
      out[k] = d;
    }
  }
  return du;
}

std::vector<double> spatial_derivative_field(const SpaceTimeSection& u, int j) {
  const JetLayout layout(u.grid().dim(), u.rank(), j);
  const auto range = layout.slots_of_order(j);
  const std::size_t channels = (range[1] - range[0]) * u.rank();
  const std::size_t nodes = u.grid().size();
  std::vector<double> field(u.levels() * nodes * channels);
  for (std::size_t m = 0; m < u.levels(); ++m) {
    const JetField jets = spectral_jet(u.slice(m), j);
    for (std::size_t node = 0; node < nodes; ++node) {
      auto z = jets.at(node);
      std::copy(z.begin() + range[0] * u.rank(), z.begin() + range[1] * u.rank(),
                field.begin() + (m * nodes + node) * channels);
    }
  }
  return field;
}

namespace {

int channels_of_order(const SpaceTimeSection& u, int j) {
  return canonical_count(u.grid().dim(), j) * u.rank();
}

}  // namespace

HolderNormReport parabolic_holder_norm(const SpaceTimeSection& u, int order, HolderExponent alpha,
                                       const HolderOptions& options) {
  if (u.levels() < 2) throw InvalidArgument("parabolic norm needs at least two time levels");
  if (order < 2 || order % 2 != 0) throw InvalidArgument("order must be even and >= 2");
  if (!u.all_finite()) throw InvalidArgument("section contains non-finite values");

  HolderNormReport report;
  const PairSampler& pairs = pair_sampler_for(u.grid(), u.times(), order, alpha, options);
  report.pairs_examined = pairs.size();

  report.sup_norms.assign(order + 1, 0.0);
  report.sup_norms[0] = u.sup_norm();
  std::vector<double> top;
  for (int j = 1; j <= order; ++j) {
    std::vector<double> field = spatial_derivative_field(u, j);
    report.sup_norms[j] = sup_abs(field);
    if (j == order) top = std::move(field);
  }
  report.spatial_seminorm = pairs.seminorm(top, channels_of_order(u, order));

  const SpaceTimeSection du = time_derivative(u);
  report.time_derivative_sup = du.sup_norm();
  report.time_seminorm = pairs.seminorm(du.values(), u.rank());

  report.total = report.time_derivative_sup + report.spatial_seminorm + report.time_seminorm;
  for (double s : report.sup_norms) report.total += s;
  return report;
}

double parabolic_lower_norm(const SpaceTimeSection& f, int order, HolderExponent alpha,
                            const HolderOptions& options) {
  const PairSampler& pairs = pair_sampler_for(f.grid(), f.times(), order, alpha, options);
  return f.sup_norm() + pairs.seminorm(f.values(), f.rank());
}

double spatial_holder_norm(const GridSection& u, int order, HolderExponent alpha,
                           const HolderOptions& options) {
  SpaceTimeSection single(u.grid(), u.rank(), {0.0});
  single.set_slice(0, u);
  const PairSampler& pairs = pair_sampler_for(u.grid(), single.times(), order, alpha, options);
  double total = u.sup_norm();
  for (int j = 1; j <= order; ++j) {
    const std::vector<double> field = spatial_derivative_field(single, j);
    total += sup_abs(field);
    if (j == order) total += pairs.seminorm(field, channels_of_order(single, j));
  }
  return total;
}

std::vector<double> derivative_seminorms(const SpaceTimeSection& u, int order,
                                         HolderExponent alpha, const HolderOptions& options) {
  const PairSampler& pairs = pair_sampler_for(u.grid(), u.times(), order, alpha, options);
  std::vector<double> out(order + 1, 0.0);
  out[0] = pairs.seminorm(u.values(), u.rank());
  for (int j = 1; j <= order; ++j) {
    out[j] = pairs.seminorm(spatial_derivative_field(u, j), channels_of_order(u, j));
  }
  return out;
}

InterpolationCheck verify_interpolation(const SpaceTimeSection& u, int order, HolderExponent alpha,
                                        double epsilon, const HolderOptions& options) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const HolderNormReport norm = parabolic_holder_norm(u, order, alpha, options);
  const std::vector<double> semis = derivative_seminorms(u, order, alpha, options);

  InterpolationCheck check;
  check.epsilon = epsilon;
  check.lhs = norm.sup_norms[order] + semis[0];
  for (int j = 1; j < order; ++j) check.lhs += norm.sup_norms[j] + semis[j];
  check.top_terms = norm.spatial_seminorm + norm.time_seminorm;
  check.sup = norm.sup_norms[0];
  const double slack = check.lhs - epsilon * check.top_terms;
  check.constant = (slack > 0.0 && check.sup > 0.0) ? slack / check.sup : 0.0;
  if (slack > 0.0 && check.sup == 0.0) check.constant = std::numeric_limits<double>::infinity();
  return interpolation_with_constant(check, check.constant);
}

InterpolationCheck interpolation_with_constant(const InterpolationCheck& fitted, double constant) {
  InterpolationCheck out = fitted;
  out.constant = constant;
  out.rhs = out.epsilon * out.top_terms + constant * out.sup;
  // Relative slack absorbs rounding when the fitted constant is used verbatim.
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

double coefficient_norm_sum(const LinearOperatorSpec& op, HolderExponent alpha,
                            const HolderOptions& options) {
  const JetLayout& layout = op.layout();
  const int l = op.rank();
  std::vector<double> times;
  for (std::size_t s = 0; s < op.slice_count(); ++s) times.push_back(op.slice_time(s));
  const PairSampler& pairs = pair_sampler_for(op.grid(), times, op.order(), alpha, options);
  const std::size_t nodes = op.grid().size();
  double lambda = 0.0;
  std::vector<double> field(times.size() * nodes * l * l);
  for (const MultiIndex& index : layout.indices()) {
    for (std::size_t s = 0; s < times.size(); ++s) {
      for (std::size_t node = 0; node < nodes; ++node) {
        for (int a = 0; a < l; ++a) {
          for (int b = 0; b < l; ++b) {
            field[((s * nodes + node) * l + a) * l + b] = op.coefficient(s, node, a, b, index);
          }
        }
      }
    }
    lambda += sup_abs(field) + pairs.seminorm(field, l * l);
  }
  return lambda;
}

}  // namespace parabolic
