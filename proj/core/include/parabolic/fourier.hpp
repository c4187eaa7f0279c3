#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "parabolic/grid.hpp"
#include "parabolic/multi_index.hpp"
#include "parabolic/section.hpp"

namespace parabolic {

using Spectrum = std::vector<std::complex<double>>;

/// Discrete Fourier transform on a torus grid (FFTW under the hood).
///
/// Coefficients are normalized so that u(x_j) = sum_k c_k exp(i k . x_j);
/// bins use the same x-fastest layout as grid nodes.
class FourierTransform {
 public:
  explicit FourierTransform(const TorusGrid& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const TorusGrid& grid() const { return grid_; }

  /// Transforms component `component` of an interleaved rank-`rank` array.
  void forward(std::span<const double> values, int rank, int component, Spectrum& out);
  /// Writes the real part of the inverse transform into component `component`.
  void backward(const Spectrum& in, std::span<double> values, int rank, int component);

  std::array<int, 2> wavevector(std::size_t bin) const;
  double wavenumber_squared(std::size_t bin) const;

 private:
  TorusGrid grid_;
  std::complex<double>* buffer_in_;
  std::complex<double>* buffer_out_;
  void* plan_forward_;
  void* plan_backward_;
};

/// Per-thread transform cache keyed by grid shape.
FourierTransform& fourier_for(const TorusGrid& grid);

/// (i k)^I for the given bin; odd powers of the Nyquist wavenumber vanish.
std::complex<double> derivative_multiplier(const TorusGrid& grid, std::size_t bin,
                                           const MultiIndex& index);

/// Spectral derivative d_I u of every component.
GridSection differentiate(const GridSection& u, const MultiIndex& index);

/// Applies a real Fourier multiplier m(k) to every component.
GridSection apply_multiplier(const GridSection& u,
                             const std::function<double(const std::array<int, 2>&)>& multiplier);

/// Fraction of spectral energy carried by bins with max |k_i| >= 3N/8.
double high_mode_energy_fraction(const GridSection& u);

}  // namespace parabolic
