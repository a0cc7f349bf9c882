#pragma once

#include "sharpineq/params.hpp"
#include "sharpineq/profiles.hpp"
#include "sharpineq/special.hpp"

namespace sharpineq {

/// Positive scale factor for dilations and ball scalings.
struct ScalingSpec {
  double lambda = 1.0;
  explicit ScalingSpec(double l);
};

/// Radial part of the ball scaling: R exp_q[lambda log_q(r/R)], which is
/// [lambda r^{-(q-1)} + (1-lambda) R^{-(q-1)}]^{-1/(q-1)}. At the critical
/// index it is R (r/R)^lambda. Fixes R; throws DomainError for r outside (0, R].
double phi_lambda(double r, ScalingSpec s, QIndex q, double R);
/// d/dr phi_lambda = lambda (phi/r)^q.
double phi_lambda_prime(double r, ScalingSpec s, QIndex q, double R);

/// u_lambda(r) = lambda^{-(theta-1)/theta} u(phi_lambda(r)) with q = params.q.
/// For theta = p this is the Sobolev-type scaling on B_R.
RadialProfile scale_ball(const RadialProfile& u, ScalingSpec s, const InequalityParams& params);
ZonalFunction scale_ball(const ZonalFunction& u, ScalingSpec s, const InequalityParams& params);

/// u_lambda(r) = lambda^{-(n-1)/n} u(R (r/R)^lambda), the p = n scaling.
RadialProfile scale_ball_critical(const RadialProfile& u, ScalingSpec s, int n, double R);

/// v_mu(rho) = mu^{(n-p)/p} v(mu rho).
RadialProfile dilate(const RadialProfile& v, ScalingSpec s, int n, double p);

/// Whole-space radius paired with a ball radius,
/// R (-(q-1) log_q(r/R))^{-alpha}; maps (0, R) onto (0, inf).
double space_radius(double r, double alpha, QIndex q, double R);
/// Inverse of space_radius: R exp_q[-(rho/R)^{-1/alpha} / (q-1)].
double ball_radius(double rho, double alpha, QIndex q, double R);

/// u(r) = v(space_radius(r)) with the coupled (alpha, q) of params.
RadialProfile to_ball(const RadialProfile& v, const InequalityParams& params);
ZonalFunction to_ball(const ZonalFunction& v, const InequalityParams& params);
/// v(rho) = u(ball_radius(rho)); exact inverse of to_ball.
RadialProfile from_ball(const RadialProfile& u, const InequalityParams& params);
ZonalFunction from_ball(const ZonalFunction& u, const InequalityParams& params);

/// Parameter of the separation-of-variables ODE that corresponds to the
/// ball-scaling parameter mu: lambda_ode = mu^{-(theta-1)/theta}.
double ode_parameter_for_scaling(double mu, double theta);

/// Solution of lambda^theta r^{n theta/p - 1} phi'^{theta-1} = phi^{n theta/p - 1}
/// with phi(R) = R, in the ODE's own parameterization.
double ode_solution(ScalingSpec s, const InequalityParams& params, double r);

/// Two sides of a pointwise identity.
struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// (lambda^theta r^{n theta/p - 1} phi'^{theta-1}, phi^{n theta/p - 1}).
IdentitySides ode_sides(ScalingSpec s, const InequalityParams& params, double r);

/// lambda^theta r^{n theta/p - 1} phi'(r)^{theta-1} - phi(r)^{n theta/p - 1}
/// for the closed-form solution; zero up to rounding.
double ode_residual(ScalingSpec s, const InequalityParams& params, double r);

/// (S_lambda(T v)(r), T(D_{lambda^{-alpha}} v)(r)).
IdentitySides intertwine_sides(const RadialProfile& v, ScalingSpec s, double alpha, QIndex q, double R, double r);

/// |S_lambda(T v)(r) - T(D_{lambda^{-alpha}} v)(r)| where S_lambda substitutes
/// phi_lambda, T is the (alpha, q) ball map and D dilates without weight.
double intertwine_gap(const RadialProfile& v, ScalingSpec s, double alpha, QIndex q, double R, double r);
/// Same with the coupled (alpha, q) of params.
double intertwine_gap(const RadialProfile& v, ScalingSpec s, const InequalityParams& params, double r);

} // namespace sharpineq
