#include "sharpineq/geometry.hpp"

#include "sharpineq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sharpineq {

namespace {

double checked_norm(const Eigen::VectorXd& y) {
  const double r = y.norm();
  if (!(r > 0.0)) throw DomainError("radial map evaluated at the origin");
  return r;
}

} // namespace

RadialMap RadialMap::dilation(double c) {
  if (!(c > 0.0)) throw DomainError("dilation factor must be positive");
  return RadialMap{[c](double s) { return c * s; }, [c](double) { return c; }};
}

GradientSplit gradient_split(const ZonalFunction& u, int n, double r, double angle) {
  if (n < 2) throw DomainError("gradient_split: n must be >= 2");
  if (!(r > 0.0)) throw DomainError("gradient_split: radius must be positive");
  const auto bps = u.radial.breakpoints();
  if (std::find(bps.begin(), bps.end(), r) != bps.end()) {
    throw DomainError("gradient_split: evaluation at a breakpoint");
  }
  const double h = u.angular.value(angle);
  GradientSplit out;
  out.radial_mag = std::abs(u.radial.derivative(r) * h);
  if (u.angular.constant) return out;
  const double f = u.radial(r);
  const double dh = u.angular.derivative(angle);
  if (n == 2) {
    out.tangential_mag = std::abs(f * dh) / r;
  } else {
    const double sine = std::sqrt(std::max(0.0, (1.0 - angle) * (1.0 + angle)));
    out.tangential_mag = std::abs(f * dh) * sine / r;
  }
  return out;
}

double zonal_value(const ZonalFunction& u, const Eigen::VectorXd& x) {
  const double r = checked_norm(x);
  const auto n = x.size();
  const double angle = (n == 2) ? std::atan2(x(1), x(0)) : x(n - 1) / r;
  return u(r, angle);
}

Eigen::VectorXd gradient_vector(const ZonalFunction& u, const Eigen::VectorXd& x) {
  const double r = checked_norm(x);
  const auto n = x.size();
  if (n < 2) throw DomainError("gradient_vector: dimension must be >= 2");
  const Eigen::VectorXd xhat = x / r;
  const double angle = (n == 2) ? std::atan2(x(1), x(0)) : x(n - 1) / r;
  Eigen::VectorXd grad = u.radial.derivative(r) * u.angular.value(angle) * xhat;
  if (u.angular.constant) return grad;
  const double f = u.radial(r);
  const double dh = u.angular.derivative(angle);
  if (n == 2) {
    Eigen::VectorXd dpsi(2);
    dpsi << -x(1) / (r * r), x(0) / (r * r);
    grad += f * dh * dpsi;
  } else {
    Eigen::VectorXd dt = -angle * xhat / r;
    dt(n - 1) += 1.0 / r;
    grad += f * dh * dt;
  }
  return grad;
}

Eigen::VectorXd map_point(const RadialMap& m, const Eigen::VectorXd& y) {
  const double r = checked_norm(y);
  return m.phi(r) * y / r;
}

Eigen::MatrixXd jacobian_matrix(const RadialMap& m, const Eigen::VectorXd& y) {
  const double ry = checked_norm(y);
  const double rx = m.phi(ry);
  const double a = (ry / rx) * m.phi_prime(ry) - 1.0;
  const auto n = y.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n);
  J += a * (y * y.transpose()) / (ry * ry);
  return (rx / ry) * J;
}

double jacobian_det(const RadialMap& m, const Eigen::VectorXd& y) {
  const double ry = checked_norm(y);
  const double rx = m.phi(ry);
  return (ry / rx) * m.phi_prime(ry) * std::pow(rx / ry, static_cast<double>(y.size()));
}

double pushforward_gradient_sq(const RadialMap& m, const GradientSplit& split, const Eigen::VectorXd& y) {
  const double ry = checked_norm(y);
  const double rx = m.phi(ry);
  const double stretch = (ry / rx) * m.phi_prime(ry);
  const double tan2 = split.tangential_mag * split.tangential_mag;
  const double rad2 = split.radial_mag * split.radial_mag;
  return (rx * rx) / (ry * ry) * (tan2 + stretch * stretch * rad2);
}

} // namespace sharpineq
