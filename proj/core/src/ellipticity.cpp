#include "parabolic/ellipticity.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>

#include "parabolic/error.hpp"

namespace parabolic {

std::vector<std::array<double, 2>> unit_covectors(int dim, int n_xi) {
  if (n_xi < 1) throw InvalidArgument("need at least one covector sample");
  if (dim == 1) return {{1.0, 0.0}};
  std::vector<std::array<double, 2>> out;
  out.reserve(n_xi);
  for (int k = 0; k < n_xi; ++k) {
    const double theta = std::numbers::pi * k / n_xi;
    out.push_back({std::cos(theta), std::sin(theta)});
  }
  return out;
}

EllipticityReport check_strong_ellipticity(const LinearOperatorSpec& op, double t, int n_xi,
                                           int n_v) {
  if (n_v < 0) throw InvalidArgument("negative fiber sample count");
  const auto covectors = unit_covectors(op.grid().dim(), n_xi);
  const double sign = (op.order() / 2 - 1) % 2 == 0 ? 1.0 : -1.0;

  EllipticityReport report;
  report.lambda = std::numeric_limits<double>::infinity();
  report.xi_samples = static_cast<int>(covectors.size());
  for (std::size_t node = 0; node < op.grid().size(); ++node) {
    for (const auto& xi : covectors) {
      const Eigen::MatrixXd sigma = principal_symbol(op, node, t, xi);
      const Eigen::MatrixXd sym = 0.5 * sign * (sigma + sigma.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
      const double m = eig.eigenvalues()(0);
      if (m < report.lambda) {
        report.lambda = m;
        report.worst_node = node;
        report.worst_x = op.grid().position(node);
        report.worst_xi = xi;
        const Eigen::VectorXd v = eig.eigenvectors().col(0);
        report.worst_v.assign(v.data(), v.data() + v.size());
      }
    }
  }
  report.elliptic = report.lambda > 0.0;
  return report;
}

double top_symbol_bound(const LinearOperatorSpec& op, int n_xi) {
  const auto covectors = unit_covectors(op.grid().dim(), n_xi);
  double bound = 0.0;
  for (std::size_t s = 0; s < op.slice_count(); ++s) {
    const double t = op.slice_time(s);
    for (std::size_t node = 0; node < op.grid().size(); ++node) {
      for (const auto& xi : covectors) {
        const Eigen::MatrixXd sigma = principal_symbol(op, node, t, xi);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(sigma);
        bound = std::max(bound, svd.singularValues()(0));
      }
    }
  }
  return bound;
}

}  // namespace parabolic
