#pragma once

#include "sharpineq/minimize.hpp"
#include "sharpineq/params.hpp"
#include "sharpineq/profiles.hpp"
#include "sharpineq/quad.hpp"

#include <functional>
#include <span>
#include <tuple>
#include <variant>
#include <vector>

namespace sharpineq {

using Trial = std::variant<RadialProfile, ZonalFunction>;

struct FunctionalConfig {
  QuadratureConfig quad;
  /// Singular ball weights with exponent above this use the boundary coordinate.
  double substitution_threshold = 0.5;
  /// Also evaluate without the substitution and require agreement to cross_check_tol.
  bool cross_check = false;
  double cross_check_tol = 1e-7;
};

/// Every inequality is recorded as constant * lhs <= rhs with first-power
/// (root-normalized) sides.
struct SideReport {
  InequalityId inequality = InequalityId::SobolevRn;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double quotient = 0.0; ///< rhs / lhs
  double deficit = 0.0;  ///< rhs - constant * lhs
  double quad_error = 0.0; ///< error bound on the deficit
  bool constant_estimated = false;
};

struct SideValue {
  double value = 0.0;
  double error = 0.0;
};

/// Left side of the inequality `id`. Throws DomainError for incompatible
/// id / trial / params, ConvergenceError when quadrature fails.
SideValue side_lhs_value(InequalityId id, const Trial& u, const InequalityParams& params,
                         const FunctionalConfig& cfg = {});
SideValue side_rhs_value(InequalityId id, const Trial& u, const InequalityParams& params,
                         const FunctionalConfig& cfg = {});
double side_lhs(InequalityId id, const Trial& u, const InequalityParams& params, const FunctionalConfig& cfg = {});
double side_rhs(InequalityId id, const Trial& u, const InequalityParams& params, const FunctionalConfig& cfg = {});

struct SharpConstant {
  double value = 0.0;
  bool estimated = false;
};

/// Root-normalized sharp constant of `id`. General ckn exponents fall back
/// to a minimization estimate over the Bliss-type family.
SharpConstant sharp_constant(InequalityId id, const InequalityParams& params, const FunctionalConfig& cfg = {});

SideReport evaluate(InequalityId id, const Trial& u, const InequalityParams& params, const FunctionalConfig& cfg = {});
/// Same, with a precomputed constant (avoids repeated estimates).
SideReport evaluate(InequalityId id, const Trial& u, const InequalityParams& params, SharpConstant constant,
                    const FunctionalConfig& cfg = {});

/// sup_r |u*(r)| / log(R/r)^{(n-1)/n}, u* the Schwarz rearrangement of u
/// (u itself when already nonincreasing).
double alvino_sup(const RadialProfile& u, int n, double R);

struct ChainValues {
  double first = 0.0;  ///< S ||u||_{p*}
  double second = 0.0; ///< S (int |u|^{p*} / s^{p(n-1)/(n-p)})^{1/p*}
  double third = 0.0;  ///< ||grad u||_p
};

/// Three terms of the chain S||u||_{p*} < (ball-weighted term) <= ||grad u||_p
/// on B_R. Throws DomainError unless u is nonincreasing.
ChainValues strict_chain(const RadialProfile& u, const InequalityParams& params, const FunctionalConfig& cfg = {});

struct TrialFamily {
  std::function<Trial(std::span<const double>)> builder;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> log_scale; ///< coordinates searched in log space
  std::string name;

  void validate() const;
};

struct QuotientMinimum {
  double quotient = 0.0;
  std::vector<double> argmin;
  int evaluations = 0;
  bool converged = false;
};

/// Local minimum of rhs/lhs over the family. Trials whose evaluation fails
/// count as +inf. Budget exhaustion returns the best point with converged=false.
QuotientMinimum minimize_quotient(InequalityId id, const TrialFamily& family, const InequalityParams& params,
                                  std::span<const double> init, const NelderMeadOptions& opts = {},
                                  const FunctionalConfig& cfg = {});

/// ball_extremal(a, b) over (a, b), both in log space.
TrialFamily ball_extremal_family(int n, double p, double R);
/// min{s^beta, s delta^{beta-1}}, s = 1 - (r/R)^{(n-p)/(p-1)}, over
/// (beta, delta) with beta >= (p-1)/p and delta in log space.
TrialFamily hardy_truncated_family(int n, double p, double R, double delta_min = 1e-12);
RadialProfile hardy_truncated(int n, double p, double R, double beta, double delta);
/// (U_mu(r) - U_mu(R))_+ on B_R for the dilated Aubin-Talenti profile.
TrialFamily concentration_family(int n, double p, double R);
RadialProfile concentration_trial(int n, double p, double R, double mu);
/// (1 + rho^gamma)^{-kappa} on R^n over (gamma, kappa*gamma - (n-p)/p) in log space.
/// The second coordinate is kept >= 1/min(theta, sigma) so that both weighted
/// integrands decay at least like rho^{-2}.
TrialFamily bliss_family(const InequalityParams& params);
/// Aubin-Talenti exponents in bliss_family coordinates, clamped to its box.
std::vector<double> bliss_init(const InequalityParams& params);

} // namespace sharpineq
