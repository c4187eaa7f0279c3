#include "parabolic/transport.hpp"

#include <algorithm>
#include <cmath>

#include "parabolic/error.hpp"

namespace parabolic {

TransportResult parallel_transport(const ChristoffelSpec& spec, const Curve& curve,
                                   const Eigen::VectorXd& v0, double step) {
  if (!spec.gamma || !curve.position || !curve.velocity) {
    throw InvalidArgument("transport needs a connection and a curve");
  }
  if (v0.size() != spec.rank) throw InvalidArgument("initial vector has the wrong rank");
  if (!(step > 0.0)) throw InvalidArgument("transport step must be positive");
  if (!(curve.length >= 0.0)) throw InvalidArgument("curve length must be non-negative");
  if (curve.length > 0.0 && step < 1e-12 * curve.length) {
    throw Error("step-size underflow in parallel transport");
  }

  auto rhs = [&](double s, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    const Eigen::MatrixXd g = spec.gamma(curve.position(s));
    return -curve.velocity(s) * (g * v);
  };

  TransportResult out;
  const double norm0 = v0.norm();
  Eigen::VectorXd v = v0;
  double s = 0.0;
  out.s.push_back(s);
  out.samples.push_back(v);
  while (s < curve.length) {
    const double h = std::min(step, curve.length - s);
    if (h <= 0.0 || s + h == s) throw Error("step-size underflow in parallel transport");
    const Eigen::VectorXd k1 = rhs(s, v);
    const Eigen::VectorXd k2 = rhs(s + 0.5 * h, v + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(s + 0.5 * h, v + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(s + h, v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s = (curve.length - s - h < 1e-14 * curve.length) ? curve.length : s + h;
    if (!v.allFinite()) throw Error("parallel transport diverged");
    out.s.push_back(s);
    out.samples.push_back(v);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(v.norm() - norm0));
  }
  return out;
}

ChristoffelSpec rotation_connection() {
  ChristoffelSpec spec;
  spec.rank = 2;
  spec.gamma = [](double) {
    Eigen::MatrixXd g(2, 2);
    g << 0.0, 1.0, -1.0, 0.0;
    return g;
  };
  return spec;
}

Curve unit_speed_circle(double length) {
  return Curve{[](double s) { return s; }, [](double) { return 1.0; }, length};
}

}  // namespace parabolic
