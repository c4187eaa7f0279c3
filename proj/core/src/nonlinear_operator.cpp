#include "parabolic/nonlinear_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "parabolic/error.hpp"

namespace parabolic {

void NonlinearOperatorSpec::validate() const {
  if (order < 2 || order % 2 != 0) throw InvalidArgument("operator order must be even and >= 2");
  if (rank < 1) throw InvalidArgument("operator rank must be positive");
  if (dim != 1 && dim != 2) throw InvalidArgument("operator dimension must be 1 or 2");
  if (!eval) throw InvalidArgument("operator has no evaluation callback");
  if (!(tube_radius > 0.0)) throw InvalidArgument("tube radius must be positive");
}

Tube::Tube(JetField center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0)) throw InvalidArgument("tube radius must be positive");
}

double Tube::distance(const JetField& jets) const {
  double sum = 0.0;
  for (double d : order_deviation(jets, center_)) sum += d;
  return sum;
}

void Tube::require_inside(const JetField& jets) const {
  const double d = distance(jets);
  if (d > radius_) {
    throw TubeViolation(worst_node(jets, center_).first, d, radius_);
  }
}

GridSection evaluate_on_jets(const NonlinearOperatorSpec& spec, const JetField& jets, double t) {
  GridSection out(jets.grid(), spec.rank);
  for (std::size_t node = 0; node < jets.grid().size(); ++node) {
    spec.eval(jets.jet(node, t), out.values().subspan(node * spec.rank, spec.rank));
  }
  return out;
}

GridSection evaluate_operator(const NonlinearOperatorSpec& spec, const GridSection& u, double t,
                              const Tube* tube) {
  if (u.rank() != spec.rank || u.grid().dim() != spec.dim) {
    throw InvalidArgument("section shape does not match operator");
  }
  const JetField jets = spectral_jet(u, spec.order);
  if (tube != nullptr) tube->require_inside(jets);
  return evaluate_on_jets(spec, jets, t);
}

void jet_derivative(const NonlinearOperatorSpec& spec, const Jet& jet, std::span<double> out) {
  const std::size_t width = jet.layout().size();
  const int l = spec.rank;
  if (out.size() != width * l) throw InvalidArgument("jacobian buffer has wrong size");
  if (spec.d_eval) {
    spec.d_eval(jet, out);
    return;
  }
  std::vector<double> z(jet.values().begin(), jet.values().end());
  std::vector<double> plus(l), minus(l);
  for (std::size_t c = 0; c < width; ++c) {
    const double h = 1e-6 * (1.0 + std::abs(z[c]));
    const double saved = z[c];
    z[c] = saved + h;
    spec.eval(Jet(jet.layout(), jet.x(), jet.t(), z), plus);
    z[c] = saved - h;
    spec.eval(Jet(jet.layout(), jet.x(), jet.t(), z), minus);
    z[c] = saved;
    for (int a = 0; a < l; ++a) {
      const double d = (plus[a] - minus[a]) / (2.0 * h);
      if (!std::isfinite(d)) {
        throw Error("finite-difference jet derivative diverged");
      }
      out[a * width + c] = d;
    }
  }
}

LinearOperatorSpec linearize(const NonlinearOperatorSpec& spec, const GridSection& base, double t,
                             const Tube* tube) {
  spec.validate();
  const JetField jets = spectral_jet(base, spec.order);
  if (tube != nullptr) tube->require_inside(jets);
  LinearOperatorSpec op(base.grid(), jets.layout());
  for (std::size_t node = 0; node < base.grid().size(); ++node) {
    jet_derivative(spec, jets.jet(node, t), op.node_matrix(0, node));
  }
  if (!op.all_finite()) throw Error("linearization produced non-finite coefficients");
  return op;
}

LipschitzEstimate estimate_lipschitz(const NonlinearOperatorSpec& spec, const GridSection& u0,
                                     double t, int samples, std::uint64_t seed) {
  const JetField center = spectral_jet(u0, spec.order);
  const JetLayout& layout = center.layout();
  const std::size_t width = layout.size();
  const int l = spec.rank;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_node(0, u0.grid().size() - 1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // Perturbations spread the radius evenly over the r + 1 jet orders.
  const double per_order = spec.tube_radius / (spec.order + 1);
  auto random_point = [&](std::vector<double>& z, std::size_t node) {
    auto c = center.at(node);
    z.assign(c.begin(), c.end());
    for (std::size_t k = 0; k < width; ++k) z[k] += per_order * unit(rng);
  };

  LipschitzEstimate est;
  std::vector<double> z1, z2, f(l), d1(l * width), d2(l * width);
  for (int s = 0; s < samples; ++s) {
    const std::size_t node = pick_node(rng);
    const auto x = u0.grid().position(node);
    random_point(z1, node);
    random_point(z2, node);
    const Jet j1(layout, x, t, z1);
    const Jet j2(layout, x, t, z2);
    spec.eval(j1, f);
    jet_derivative(spec, j1, d1);
    jet_derivative(spec, j2, d2);
    for (double v : f) est.k1 = std::max(est.k1, std::abs(v));
    for (double v : d1) est.k1 = std::max(est.k1, std::abs(v));
    double dz = 0.0;
    for (std::size_t k = 0; k < width; ++k) dz = std::max(dz, std::abs(z1[k] - z2[k]));
    double dd = 0.0;
    for (std::size_t k = 0; k < d1.size(); ++k) dd = std::max(dd, std::abs(d1[k] - d2[k]));
    if (dz > 0.0) est.k2 = std::max(est.k2, dd / dz);
  }
  est.samples = samples;
  if (spec.k1) est.k1 = *spec.k1;
  if (spec.k2) est.k2 = *spec.k2;
  return est;
}

}  // namespace parabolic
