#pragma once

#include "sharpineq/profiles.hpp"

#include <Eigen/Dense>
#include <functional>

namespace sharpineq {

/// |grad u| split into its radial and tangential (sphere) components.
struct GradientSplit {
  double radial_mag = 0.0;
  double tangential_mag = 0.0;

  double norm_sq() const { return radial_mag * radial_mag + tangential_mag * tangential_mag; }
};

/// Radial map x = phi(|y|) y/|y| with phi strictly increasing.
struct RadialMap {
  std::function<double(double)> phi;
  std::function<double(double)> phi_prime;

  static RadialMap dilation(double c);
};

/// Radial/tangential gradient magnitudes of a zonal function at radius r and
/// angle (t = cos of the polar angle for n >= 3, psi for n = 2).
/// Throws DomainError at a breakpoint of the radial factor.
GradientSplit gradient_split(const ZonalFunction& u, int n, double r, double angle);

/// Full Cartesian gradient of the zonal function u at x (axis e_n for n >= 3).
Eigen::VectorXd gradient_vector(const ZonalFunction& u, const Eigen::VectorXd& x);

/// Value of the zonal function u at Cartesian x.
double zonal_value(const ZonalFunction& u, const Eigen::VectorXd& x);

/// Image point phi(|y|) y/|y|.
Eigen::VectorXd map_point(const RadialMap& m, const Eigen::VectorXd& y);

/// d x_i / d y_j = (|x|/|y|) [delta_ij + ((|y|/|x|) phi'(|y|) - 1) y_i y_j/|y|^2].
Eigen::MatrixXd jacobian_matrix(const RadialMap& m, const Eigen::VectorXd& y);

/// Closed form (|y|/|x|) phi'(|y|) (|x|/|y|)^n of det(dx/dy).
double jacobian_det(const RadialMap& m, const Eigen::VectorXd& y);

/// (|x|^2/|y|^2) (tangential^2 + ((|y|/|x|) phi'(|y|))^2 radial^2), the
/// squared length of (dx/dy) grad_x u for a gradient with the given split.
double pushforward_gradient_sq(const RadialMap& m, const GradientSplit& split, const Eigen::VectorXd& y);

} // namespace sharpineq
