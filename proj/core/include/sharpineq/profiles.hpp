#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpineq {

/// Alternative evaluation of a ball profile in the boundary coordinate
/// s = 1 - (r/R)^kappa, exact where recomputing s from r would cancel.
struct BoundaryChart {
  double kappa = 1.0;
  std::function<double(double)> value;              ///< f as a function of s
  std::function<double(double, double)> derivative; ///< f'(r) given (r, s)
};

/// A radial function u(x) = f(|x|) with optional analytic derivative.
///
/// The support is (0, support_end]; values past support_end are zero, so a
/// finite support_end means the profile lives on the ball of that radius.
/// Breakpoints mark radii where smoothness may fail or monotonicity flips.
class RadialProfile {
public:
  using Fn = std::function<double(double)>;
  static constexpr double kWholeSpace = std::numeric_limits<double>::infinity();

  RadialProfile(Fn value, std::optional<Fn> derivative, double support_end,
                std::vector<double> breakpoints = {}, std::string name = "profile");

  double operator()(double r) const;
  double value(double r) const { return (*this)(r); }
  /// Analytic derivative if present, otherwise a central difference with
  /// step eps^{1/3} max(1, r), switched to one-sided near 0 and breakpoints.
  double derivative(double r) const;

  bool has_analytic_derivative() const noexcept { return derivative_.has_value(); }
  double support_end() const noexcept { return support_end_; }
  bool on_ball() const noexcept { return support_end_ < kWholeSpace; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  const std::string& name() const noexcept { return name_; }

  /// Copy with the analytic derivative dropped (forces the fallback).
  RadialProfile without_derivative() const;

  RadialProfile with_boundary_chart(BoundaryChart chart) const;
  const std::optional<BoundaryChart>& boundary_chart() const noexcept { return chart_; }

private:
  double finite_difference(double r) const;

  Fn value_;
  std::optional<Fn> derivative_;
  std::optional<BoundaryChart> chart_;
  double support_end_;
  std::vector<double> breakpoints_;
  std::string name_;
};

/// Angular factor h of a zonal function. For n >= 3 the argument is
/// t = x_n / |x| in [-1, 1]; for n = 2 it is the polar angle psi.
struct AngularFactor {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  bool constant = false;

  static AngularFactor one();
};

/// u(x) = f(|x|) h(angle). Product form only.
struct ZonalFunction {
  RadialProfile radial;
  AngularFactor angular;

  bool is_radial() const { return angular.constant; }
  double operator()(double r, double angle) const { return radial(r) * angular.value(angle); }
};

struct ExtremalParams {
  double a = 1.0;
  double b = 1.0;
  /// Throws DomainError unless a, b > 0.
  void validate() const;
};

/// (a + b rho^{p/(p-1)})^{1-n/p} on (0, inf).
RadialProfile aubin_talenti(ExtremalParams e, int n, double p);

/// [a + b (r^{-k} - R^{-k})^{-p/(n-p)}]^{1-n/p}, k = (n-p)/(p-1), on (0, R);
/// the ball analogue of the Aubin-Talenti family.
RadialProfile ball_extremal(ExtremalParams e, int n, double p, double R);

/// Moser function: (log(R/rho))^{(n-1)/n} on r <= rho and
/// log(R/r) / (log(R/rho))^{1/n} on rho < r < R.
RadialProfile moser(int n, double R, double rho);
/// Closed form of ||grad moser||_{L^n(B_R)}, which is omega_{n-1}^{1/n}.
double moser_gradient_norm(int n);

/// e * exp(-1 / (1 - z^2)), z = (r - center)/width, peak value 1.
/// The support must lie strictly inside (0, R) (center may be 0).
RadialProfile bump(double R, double center, double width);

/// exp(-rho^2) on (0, inf).
RadialProfile gaussian(double scale = 1.0);

/// max(f(r) - f(R), 0) restricted to (0, R); f must be nonincreasing near R.
RadialProfile truncate_to_ball(const RadialProfile& f, double R);

/// mu_f(lambda) = |{x in B_R : |f(|x|)| > lambda}| for a continuous,
/// piecewise monotone profile on (0, R]; the pieces are delimited by the
/// profile's breakpoints. Throws DomainError when a piece is not monotone.
double distribution_function(const RadialProfile& f, int n, double lambda);

/// Schwarz symmetrization f*(r) = inf{lambda : mu_f(lambda) <= |B_r|}.
/// The derivative comes from the coarea formula.
RadialProfile schwarz_rearrange(const RadialProfile& f, int n);

/// Largest |f| over the profile's support (grid plus refinement).
double profile_sup(const RadialProfile& f);

} // namespace sharpineq
