#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "parabolic/section.hpp"

namespace testing_support {

using parabolic::GridSection;
using parabolic::SpaceTimeSection;
using parabolic::TorusGrid;

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

/// Random trigonometric polynomial with modes |k_i| <= kmax per axis.
struct RandomModes {
  struct Term {
    int kx, ky, b;
    double a, c;
  };
  std::vector<Term> terms;

  RandomModes(std::mt19937_64& rng, int dim, int rank, int kmax, int count = 6) {
    std::uniform_int_distribution<int> k(-kmax, kmax);
    std::uniform_int_distribution<int> comp(0, rank - 1);
    std::normal_distribution<double> amp(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      terms.push_back({k(rng), dim == 2 ? k(rng) : 0, comp(rng), amp(rng), amp(rng)});
    }
  }

  void operator()(const std::array<double, 2>& x, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Term& t : terms) {
      const double phase = t.kx * x[0] + t.ky * x[1];
      out[t.b] += t.a * std::cos(phase) + t.c * std::sin(phase);
    }
  }
};

inline GridSection random_section(std::mt19937_64& rng, const TorusGrid& grid, int rank, int kmax) {
  const RandomModes modes(rng, grid.dim(), rank, kmax);
  return GridSection::sample(grid, rank, [&](const std::array<double, 2>& x, double,
                                             std::span<double> out) { modes(x, out); });
}

/// Band-limited in space, polynomial of degree <= 2 in time.
inline SpaceTimeSection random_space_time(std::mt19937_64& rng, const TorusGrid& grid, int rank,
                                          int kmax, const std::vector<double>& times) {
  const RandomModes m0(rng, grid.dim(), rank, kmax), m1(rng, grid.dim(), rank, kmax),
      m2(rng, grid.dim(), rank, kmax);
  std::vector<double> a(rank), b(rank), c(rank);
  return SpaceTimeSection::sample(grid, rank, times,
                                  [&](const std::array<double, 2>& x, double t,
                                      std::span<double> out) {
                                    m0(x, a);
                                    m1(x, b);
                                    m2(x, c);
                                    for (int i = 0; i < rank; ++i) {
                                      out[i] = a[i] + t * b[i] + t * t * c[i];
                                    }
                                  });
}

}  // namespace testing_support
