#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parabolic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, non-finite values, out-of-range parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A jet left the tube of radius R0 around the reference jet.
class TubeViolation : public Error {
 public:
  TubeViolation(std::size_t worst_node, double distance, double radius);

  std::size_t worst_node() const { return worst_node_; }
  double distance() const { return distance_; }
  double radius() const { return radius_; }

 private:
  std::size_t worst_node_;
  double distance_;
  double radius_;
};

/// The linear time stepper blew up after exhausting its step halvings.
class InstabilityError : public Error {
 public:
  explicit InstabilityError(double dt);
  double dt() const { return dt_; }

 private:
  double dt_;
};

/// A linear operator failed the Legendre-Hadamard check.
class NotElliptic : public Error {
 public:
  explicit NotElliptic(double lambda);
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

/// The fixed-point driver ran out of horizon halvings.
class NoContractionHorizon : public Error {
 public:
  using Error::Error;
};

/// A diagnostic needs a true solution but got a large residual.
class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(double residual, double limit);
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace parabolic
