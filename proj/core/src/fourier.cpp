#include "parabolic/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "parabolic/error.hpp"

namespace parabolic {

namespace {
// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FourierTransform::FourierTransform(const TorusGrid& grid) : grid_(grid) {
  const std::size_t n = grid.size();
  buffer_in_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  buffer_out_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* in = reinterpret_cast<fftw_complex*>(buffer_in_);
  auto* out = reinterpret_cast<fftw_complex*>(buffer_out_);
  const int N = grid.points_per_dim();
  const std::lock_guard lock(planner_mutex());
  if (grid.dim() == 1) {
    plan_forward_ = fftw_plan_dft_1d(N, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_backward_ = fftw_plan_dft_1d(N, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    // Row-major (y slow, x fast) matches the node layout.
    plan_forward_ = fftw_plan_dft_2d(N, N, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_backward_ = fftw_plan_dft_2d(N, N, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
}

FourierTransform::~FourierTransform() {
  const std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
  fftw_free(buffer_in_);
  fftw_free(buffer_out_);
}

void FourierTransform::forward(std::span<const double> values, int rank, int component,
                               Spectrum& out) {
  const std::size_t n = grid_.size();
  for (std::size_t j = 0; j < n; ++j) buffer_in_[j] = values[j * rank + component];
  fftw_execute(static_cast<fftw_plan>(plan_forward_));
  out.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = buffer_out_[j] * scale;
}

void FourierTransform::backward(const Spectrum& in, std::span<double> values, int rank,
                                int component) {
  const std::size_t n = grid_.size();
  std::copy(in.begin(), in.end(), buffer_in_);
  fftw_execute(static_cast<fftw_plan>(plan_backward_));
  for (std::size_t j = 0; j < n; ++j) values[j * rank + component] = buffer_out_[j].real();
}

std::array<int, 2> FourierTransform::wavevector(std::size_t bin) const {
  const auto c = grid_.coords(bin);
  return {grid_.wavenumber(c[0]), grid_.dim() == 1 ? 0 : grid_.wavenumber(c[1])};
}

double FourierTransform::wavenumber_squared(std::size_t bin) const {
  const auto k = wavevector(bin);
  return static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
}

FourierTransform& fourier_for(const TorusGrid& grid) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<FourierTransform>> cache;
  auto& slot = cache[{grid.dim(), grid.points_per_dim()}];
  if (!slot) slot = std::make_unique<FourierTransform>(grid);
  return *slot;
}

std::complex<double> derivative_multiplier(const TorusGrid& grid, std::size_t bin,
                                           const MultiIndex& index) {
  const auto c = grid.coords(bin);
  const int nyquist = grid.points_per_dim() / 2;
  std::complex<double> m{1.0, 0.0};
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const int power = index.count(axis);
    if (power == 0) continue;
    const int k = grid.wavenumber(c[axis]);
    if (k == nyquist && power % 2 == 1) return {0.0, 0.0};
    // (i k)^p = k^p * i^p
    const double kp = std::pow(static_cast<double>(k), power);
    static constexpr std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    m *= kp * kIPowers[power % 4];
  }
  return m;
}

GridSection differentiate(const GridSection& u, const MultiIndex& index) {
  auto& ft = fourier_for(u.grid());
  GridSection out(u.grid(), u.rank());
  Spectrum spec;
  for (int b = 0; b < u.rank(); ++b) {
    ft.forward(u.values(), u.rank(), b, spec);
    for (std::size_t j = 0; j < spec.size(); ++j) {
      spec[j] *= derivative_multiplier(u.grid(), j, index);
    }
    ft.backward(spec, out.values(), u.rank(), b);
  }
  return out;
}

GridSection apply_multiplier(const GridSection& u,
                             const std::function<double(const std::array<int, 2>&)>& multiplier) {
  auto& ft = fourier_for(u.grid());
  GridSection out(u.grid(), u.rank());
  Spectrum spec;
  for (int b = 0; b < u.rank(); ++b) {
    ft.forward(u.values(), u.rank(), b, spec);
    for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= multiplier(ft.wavevector(j));
    ft.backward(spec, out.values(), u.rank(), b);
  }
  return out;
}

double high_mode_energy_fraction(const GridSection& u) {
  auto& ft = fourier_for(u.grid());
  const int cutoff = 3 * u.grid().points_per_dim() / 8;
  double total = 0.0;
  double high = 0.0;
  Spectrum spec;
  for (int b = 0; b < u.rank(); ++b) {
    ft.forward(u.values(), u.rank(), b, spec);
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const auto k = ft.wavevector(j);
      const double e = std::norm(spec[j]);
      total += e;
      if (std::max(std::abs(k[0]), std::abs(k[1])) >= cutoff) high += e;
    }
  }
  return total > 0.0 ? high / total : 0.0;
}

}  // namespace parabolic
