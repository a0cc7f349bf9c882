#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace sharpineq {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 60;
  /// Integrate the outer half of a ball radius in the boundary coordinate
  /// s = 1 - (r/R)^kappa with an exponential map s = s0 e^{-w}.
  bool boundary_substitution = true;

  /// Throws DomainError on non-positive tolerances or max_depth < 10.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    evaluations += other.evaluations;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

/// Adaptive G7/K15 quadrature on (a, b) with global bisection refinement.
/// Nodes are interior, so integrable endpoint blow-up is allowed.
/// Throws ConvergenceError when the tolerance cannot be met.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Same as integrate(), with (a, b) pre-split at the sorted interior knots.
QuadratureResult integrate_pieces(const Integrand& f, double a, double b, std::span<const double> knots,
                                  const QuadratureConfig& cfg = {});

/// Integral over (a, inf) through rho = a + t/(1-t).
QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg = {});

/// A radius together with its boundary coordinate s = 1 - (r/R)^kappa
/// (s = 1 on the whole space). On the ball, s is supplied without
/// cancellation even when r rounds to R.
struct RadialPoint {
  double r = 0.0;
  double s = 1.0;
};

/// Radial integration domain: (0, R) or (0, inf), with optional knots where
/// the integrand loses smoothness.
struct RadialDomain {
  double R = std::numeric_limits<double>::infinity();
  double kappa = 1.0; ///< exponent of the boundary coordinate
  std::vector<double> breakpoints;

  static RadialDomain ball(double R, double kappa = 1.0, std::vector<double> breakpoints = {});
  static RadialDomain whole_space(std::vector<double> breakpoints = {});
  bool is_ball() const { return R < std::numeric_limits<double>::infinity(); }
  double boundary_coordinate(double r) const;
};

using RadialIntegrand = std::function<double(const RadialPoint&)>;

/// Plain one-dimensional integral of g over the radial domain (no measure).
QuadratureResult integrate_radius(const RadialIntegrand& g, const RadialDomain& domain,
                                  const QuadratureConfig& cfg = {});

/// omega_{n-1} * int g(r) r^{n-1} dr.
QuadratureResult radial_integral(int n, const Integrand& g, const RadialDomain& domain,
                                 const QuadratureConfig& cfg = {});
QuadratureResult radial_integral(int n, const RadialIntegrand& g, const RadialDomain& domain,
                                 const QuadratureConfig& cfg = {});

/// G(point, angle). For n >= 3 the angle is t = cos(polar angle) in [-1, 1];
/// for n = 2 it is the full angle psi in [0, 2 pi).
using ZonalIntegrand = std::function<double(const RadialPoint&, double)>;

/// For n >= 3: omega_{n-2} int int G r^{n-1} (1-t^2)^{(n-3)/2} dt dr.
/// For n = 2: int int G r dpsi dr.
QuadratureResult zonal_integral(int n, const ZonalIntegrand& G, const RadialDomain& domain,
                                const QuadratureConfig& cfg = {});

} // namespace sharpineq
