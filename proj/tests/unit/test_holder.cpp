#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "parabolic/error.hpp"
#include "parabolic/holder.hpp"
#include "parabolic/transport.hpp"
#include "support.hpp"

using namespace parabolic;

namespace {

// Brute force over every pair of space-time nodes, written independently of PairSampler.
double brute_force_seminorm(const TorusGrid& g, const std::vector<double>& times, int order,
                            double alpha, const std::function<double(std::size_t, std::size_t)>& w) {
  double best = 0.0;
  for (std::size_t m1 = 0; m1 < times.size(); ++m1) {
    for (std::size_t n1 = 0; n1 < g.size(); ++n1) {
      for (std::size_t m2 = 0; m2 < times.size(); ++m2) {
        for (std::size_t n2 = 0; n2 < g.size(); ++n2) {
          const double dx = std::abs(g.position(n1)[0] - g.position(n2)[0]);
          const double wrapped = std::min(dx, 2 * std::numbers::pi - dx);
          const double d = wrapped + std::pow(std::abs(times[m1] - times[m2]), 1.0 / order);
          if (d == 0.0) continue;
          best = std::max(best, std::abs(w(m1, n1) - w(m2, n2)) / std::pow(d, alpha));
        }
      }
    }
  }
  return best;
}

SpaceTimeSection sample(const TorusGrid& g, const std::vector<double>& times,
                        std::function<double(double, double)> fn) {
  return SpaceTimeSection::sample(g, 1, times,
                                  [fn](const std::array<double, 2>& x, double t,
                                       std::span<double> out) { out[0] = fn(x[0], t); });
}

}  // namespace

TEST_SUITE("holder") {

TEST_CASE("exponent must lie strictly inside (0, 1)") {
  CHECK_THROWS_AS(HolderExponent(0.0), InvalidArgument);
  CHECK_THROWS_AS(HolderExponent(1.0), InvalidArgument);
  CHECK_THROWS_AS(HolderExponent(1.5), InvalidArgument);
  CHECK(HolderExponent(0.5).value() == 0.5);
}

TEST_CASE("constant section") {
  const TorusGrid g(1, 16);
  const auto u = sample(g, uniform_times(0.1, 4), [](double, double) { return -2.5; });
  const HolderNormReport r = parabolic_holder_norm(u, 2, HolderExponent(0.5));
  CHECK(r.total == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(r.spatial_seminorm <= 1e-12);
  CHECK(r.time_seminorm <= 1e-12);
  CHECK(r.time_derivative_sup <= 1e-12);
  double sum = r.time_derivative_sup + r.spatial_seminorm + r.time_seminorm;
  for (double s : r.sup_norms) sum += s;
  CHECK(r.total == doctest::Approx(sum));
}

TEST_CASE("time-linear section") {
  const TorusGrid g(1, 16);
  const auto u = sample(g, uniform_times(0.2, 8), [](double, double t) { return t; });
  const HolderNormReport r = parabolic_holder_norm(u, 2, HolderExponent(0.5));
  CHECK(r.time_derivative_sup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.time_seminorm <= 1e-10);
}

TEST_CASE("top seminorm matches an exhaustive oracle on a small grid") {
  const TorusGrid g(1, 16);
  const std::vector<double> times = uniform_times(0.1, 4);
  const auto u = sample(g, times, [](double x, double) { return std::sin(x); });
  const double oracle = brute_force_seminorm(g, times, 2, 0.5, [&](std::size_t, std::size_t n) {
    return -std::sin(g.position(n)[0]);
  });
  const HolderNormReport r = parabolic_holder_norm(u, 2, HolderExponent(0.5));
  CHECK(r.spatial_seminorm <= oracle * (1 + 1e-9));
  CHECK(r.spatial_seminorm >= 0.95 * oracle);
  CHECK(pair_sampler_for(g, times, 2, HolderExponent(0.5), {}).exhaustive());

  HolderOptions small;
  small.pair_budget = 200;
  const HolderNormReport s = parabolic_holder_norm(u, 2, HolderExponent(0.5), small);
  CHECK_FALSE(pair_sampler_for(g, times, 2, HolderExponent(0.5), small).exhaustive());
  CHECK(s.spatial_seminorm <= oracle * (1 + 1e-9));
}

TEST_CASE("random subsample never exceeds the exhaustive value") {
  std::mt19937_64 rng(3);
  const TorusGrid g(1, 16);
  const std::vector<double> times = uniform_times(0.05, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = testing_support::random_space_time(rng, g, 1, 4, times);
    HolderOptions small;
    small.pair_budget = 300;
    small.seed = 100 + trial;
    const auto full = derivative_seminorms(u, 2, HolderExponent(0.4));
    const auto part = derivative_seminorms(u, 2, HolderExponent(0.4), small);
    for (std::size_t j = 0; j < full.size(); ++j) CHECK(part[j] <= full[j] * (1 + 1e-12));
  }
}

TEST_CASE("norm axioms on random sections") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  const TorusGrid g(1, 16);
  const std::vector<double> times = uniform_times(0.05, 6);
  const HolderExponent a(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = testing_support::random_space_time(rng, g, 1, 5, times);
    const auto v = testing_support::random_space_time(rng, g, 1, 5, times);
    const double nu = parabolic_holder_norm(u, 2, a).total;
    const double nv = parabolic_holder_norm(v, 2, a).total;
    const double c = scale(rng);
    CHECK(parabolic_holder_norm(c * u, 2, a).total == doctest::Approx(std::abs(c) * nu).epsilon(1e-12));
    CHECK(parabolic_holder_norm(u + v, 2, a).total <= (nu + nv) * (1 + 1e-12));
  }
}

TEST_CASE("seminorm vanishes exactly on constant fields") {
  const TorusGrid g(1, 16);
  const std::vector<double> times = uniform_times(0.1, 3);
  const PairSampler& p = pair_sampler_for(g, times, 2, HolderExponent(0.5), {});
  std::vector<double> field(g.size() * times.size(), 4.0);
  CHECK(p.seminorm(field, 1) == 0.0);
  field[7] += 1e-9;
  CHECK(p.seminorm(field, 1) > 1e-12);
}

TEST_CASE("fewer than two levels is an error") {
  const TorusGrid g(1, 16);
  const auto u = sample(g, {0.0}, [](double x, double) { return std::sin(x); });
  CHECK_THROWS_AS(parabolic_holder_norm(u, 2, HolderExponent(0.5)), InvalidArgument);
  CHECK_THROWS_AS(time_derivative(u), InvalidArgument);
}

TEST_CASE("time derivative is second order on a quadratic") {
  const TorusGrid g(1, 8);
  const auto u = sample(g, uniform_times(1.0, 5), [](double x, double t) { return t * t + std::cos(x); });
  const SpaceTimeSection du = time_derivative(u);
  for (std::size_t m = 0; m < u.levels(); ++m) {
    CHECK(du(m, 3, 0) == doctest::Approx(2.0 * u.times()[m]).epsilon(1e-12));
  }
}

TEST_CASE("report key values") {
  const TorusGrid g(1, 8);
  const auto u = sample(g, uniform_times(0.1, 2), [](double x, double) { return std::sin(x); });
  const auto kv = parabolic_holder_norm(u, 2, HolderExponent(0.5)).key_values();
  CHECK(kv.front().first == "sup_d0");
  bool has_total = false;
  for (const auto& [k, v] : kv) has_total = has_total || k == "total";
  CHECK(has_total);
}

TEST_CASE("interpolation on a constant and on sin(x)") {
  const TorusGrid g(1, 32);
  const std::vector<double> times = uniform_times(0.05, 10);
  const auto c = sample(g, times, [](double, double) { return 1.7; });
  const InterpolationCheck cc = verify_interpolation(c, 2, HolderExponent(0.5), 0.1);
  CHECK(cc.lhs <= 1e-12);
  CHECK(cc.holds);

  const auto s = sample(g, times, [](double x, double) { return std::sin(x); });
  for (double eps : {0.1, 0.01}) {
    const InterpolationCheck r = verify_interpolation(s, 2, HolderExponent(0.5), eps);
    CHECK(std::isfinite(r.constant));
    CHECK(r.holds);
    CHECK(r.rhs == doctest::Approx(eps * r.top_terms + r.constant * r.sup));
    CHECK_FALSE(interpolation_with_constant(r, 0.9 * r.constant).holds);
  }
}

TEST_CASE("coefficient norm sum of the Laplacian") {
  const TorusGrid g(1, 16);
  LinearOperatorSpec op(g, JetLayout(1, 1, 2));
  op.set_constant(MultiIndex(2), Eigen::MatrixXd::Identity(1, 1));
  CHECK(coefficient_norm_sum(op, HolderExponent(0.5)) == doctest::Approx(1.0));
  op.set_field(MultiIndex(0), 0, 0, [](const std::array<double, 2>& x) { return std::sin(x[0]); });
  CHECK(coefficient_norm_sum(op, HolderExponent(0.5)) > 2.0);
}

TEST_CASE("transport with a vanishing connection is constant") {
  ChristoffelSpec zero{3, [](double) { return Eigen::MatrixXd::Zero(3, 3); }};
  const Eigen::VectorXd v0 = Eigen::Vector3d(1.0, -2.0, 0.5);
  const TransportResult r = parallel_transport(zero, unit_speed_circle(5.0), v0, 1e-2);
  for (const auto& v : r.samples) CHECK((v - v0).norm() == 0.0);
  CHECK(r.s.back() == 5.0);
}

TEST_CASE("rotation connection gives the closed-form rotation") {
  const Eigen::VectorXd v0 = Eigen::Vector2d(0.3, -1.1);
  const TransportResult r = parallel_transport(rotation_connection(), unit_speed_circle(2 * std::numbers::pi), v0, 1e-3);
  double err = 0.0;
  for (std::size_t k = 0; k < r.s.size(); ++k) {
    const double s = r.s[k];
    const Eigen::Vector2d exact(std::cos(s) * v0[0] - std::sin(s) * v0[1],
                                std::sin(s) * v0[0] + std::cos(s) * v0[1]);
    err = std::max(err, (r.samples[k] - exact).norm());
  }
  CHECK(err <= 1e-8);
  CHECK(r.max_norm_drift <= 1e-8);
}

TEST_CASE("antisymmetric connections preserve the fiber norm") {
  ChristoffelSpec spec{3, [](double x) {
                         Eigen::MatrixXd g(3, 3);
                         const double a = std::sin(x), b = 2 * std::cos(3 * x), c = 0.5;
                         g << 0, a, b, -a, 0, c, -b, -c, 0;
                         return g;
                       }};
  Curve curve{[](double s) { return s + 0.3 * std::sin(s); },
              [](double s) { return 1 + 0.3 * std::cos(s); }, 4.0};
  const TransportResult r = parallel_transport(spec, curve, Eigen::Vector3d(1, 2, 3), 1e-3);
  CHECK(r.max_norm_drift <= 1e-8);
}

TEST_CASE("transport rejects bad steps") {
  const Eigen::VectorXd v0 = Eigen::Vector2d(1, 0);
  CHECK_THROWS_AS(parallel_transport(rotation_connection(), unit_speed_circle(1.0), v0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(parallel_transport(rotation_connection(), unit_speed_circle(1.0), v0, -1.0), InvalidArgument);
  CHECK_THROWS_WITH_AS(parallel_transport(rotation_connection(), unit_speed_circle(1.0), v0, 1e-15),
                       doctest::Contains("underflow"), Error);
}

}  // TEST_SUITE
