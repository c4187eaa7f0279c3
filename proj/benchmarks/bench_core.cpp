#include <benchmark/benchmark.h>

#include <cmath>

#include "parabolic/fixed_point.hpp"
#include "parabolic/holder.hpp"
#include "parabolic/jet.hpp"
#include "parabolic/linear_solver.hpp"
#include "parabolic/problems.hpp"

using namespace parabolic;

namespace {

GridSection wave(const TorusGrid& g) {
  return GridSection::sample(g, 1, [](const std::array<double, 2>& x, double, std::span<double> out) {
    out[0] = std::sin(x[0]) + 0.3 * std::cos(3 * x[0] + 2 * x[1]);
  });
}

void BM_SpectralJet(benchmark::State& state) {
  const TorusGrid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const GridSection u = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_jet(u, 4));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_SpectralJet)->Args({1, 64})->Args({1, 256})->Args({1, 1024})->Args({2, 32})->Args({2, 64});

void BM_HolderNorm(benchmark::State& state) {
  const TorusGrid g(1, static_cast<int>(state.range(0)));
  const auto u = SpaceTimeSection::sample(g, 1, uniform_times(0.05, static_cast<int>(state.range(1))),
                                          [](const std::array<double, 2>& x, double t, std::span<double> out) {
                                            out[0] = std::exp(-t) * std::sin(x[0]);
                                          });
  for (auto _ : state) benchmark::DoNotOptimize(parabolic_holder_norm(u, 2, HolderExponent(0.5)).total);
}
BENCHMARK(BM_HolderNorm)->Args({16, 8})->Args({64, 100})->Args({64, 500})->Unit(benchmark::kMillisecond);

void BM_LinearSteps(benchmark::State& state) {
  const ProblemCard& card = find_card("arctan");
  const TorusGrid g(1, static_cast<int>(state.range(0)));
  const GridSection u0 = card.initial(g);
  const LinearProblem problem{linearize(card.spec, u0, 0.0), zero_source(), u0, 0.01, 100};
  StepperConfig config;
  config.check_ellipticity = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(problem, config).residual);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_LinearSteps)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ContractionMap(benchmark::State& state) {
  const ProblemCard& card = find_card(state.range(0) == 0 ? "semilinear" : "arctan");
  const TorusGrid g(1, 64);
  const GridSection u0 = card.initial(g);
  const std::vector<double> times = uniform_times(0.01, 100);
  const ContractionMap map(card.spec, u0, times);
  const SpaceTimeSection u = ball_member(u0, times);
  for (auto _ : state) benchmark::DoNotOptimize(map(u).sup_norm());
}
BENCHMARK(BM_ContractionMap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolveNonlinear(benchmark::State& state) {
  const ProblemCard& card = find_card("arctan");
  const TorusGrid g(1, 64);
  FixedPointOptions o;
  o.delta = 0.02;
  for (auto _ : state) benchmark::DoNotOptimize(solve_nonlinear(card.spec, card.initial(g), o).residual);
}
BENCHMARK(BM_SolveNonlinear)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
