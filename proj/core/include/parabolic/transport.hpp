#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace parabolic {

/// Connection coefficients along a 1-dimensional base: gamma(x)(a, b) = Gamma_{1b}^a(x).
/// Fibers carry the Euclidean metric.
struct ChristoffelSpec {
  int rank = 1;
  std::function<Eigen::MatrixXd(double x)> gamma;
};

/// Curve s -> gamma(s) on the base circle, s in [0, length].
struct Curve {
  std::function<double(double s)> position;
  std::function<double(double s)> velocity;
  double length = 0.0;
};

struct TransportResult {
  std::vector<double> s;
  std::vector<Eigen::VectorXd> samples;
  /// max_s | |V(s)| - |V(0)| |
  double max_norm_drift = 0.0;
};

/// Solves dV^a/ds + Gamma_{1b}^a(gamma(s)) gamma'(s) V^b = 0 with classical RK4.
/// The last step is shortened to land on the curve's end.
TransportResult parallel_transport(const ChristoffelSpec& spec, const Curve& curve,
                                   const Eigen::VectorXd& v0, double step);

/// Rank-2 connection Gamma = [[0, 1], [-1, 0]]; along a unit-speed curve V(s)
/// is V0 rotated by angle s.
ChristoffelSpec rotation_connection();

/// x(s) = s on the circle.
Curve unit_speed_circle(double length);

}  // namespace parabolic
