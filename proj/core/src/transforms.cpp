#include "sharpineq/transforms.hpp"

#include "sharpineq/errors.hpp"

#include <cmath>
#include <vector>

namespace sharpineq {

namespace {

// log(e^x - 1) for x > 0.
double log_expm1(double x) {
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

void require_radius(double r, double R) {
  if (!(r > 0.0 && r <= R)) throw DomainError("radius outside (0, R]");
}

void require_ball_profile(const RadialProfile& u, double R) {
  if (!u.on_ball() || u.support_end() > R * (1.0 + 1e-12)) {
    throw DomainError("profile must be supported in the ball (0, R]");
  }
}

std::vector<double> mapped_breakpoints(const RadialProfile& u, auto&& map) {
  std::vector<double> out;
  for (double b : u.breakpoints()) out.push_back(map(b));
  return out;
}

} // namespace

ScalingSpec::ScalingSpec(double l) : lambda(l) {
  if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("scale factor must be positive");
}

double phi_lambda(double r, ScalingSpec s, QIndex q, double R) {
  require_radius(r, R);
  if (r == R) return R;
  if (q.is_critical()) return R * std::pow(r / R, s.lambda);
  return R * q_exp(q, s.lambda * q_log(q, r / R));
}

double phi_lambda_prime(double r, ScalingSpec s, QIndex q, double R) {
  const double phi = phi_lambda(r, s, q, R);
  const double expo = q.is_critical() ? 1.0 : q.value();
  return s.lambda * std::pow(phi / r, expo);
}

RadialProfile scale_ball(const RadialProfile& u, ScalingSpec s, const InequalityParams& params) {
  const double R = params.R;
  require_ball_profile(u, R);
  const QIndex q(params.q);
  const double weight = std::pow(s.lambda, -(params.theta - 1.0) / params.theta);
  auto value = [=](double r) {
    if (r <= 0.0) return weight * u(0.0);
    if (r >= R) return weight * u(R);
    return weight * u(phi_lambda(r, s, q, R));
  };
  auto deriv = [=](double r) {
    if (r <= 0.0 || r >= R) return 0.0;
    const double inner = u.derivative(phi_lambda(r, s, q, R));
    if (inner == 0.0) return 0.0;
    return weight * inner * phi_lambda_prime(r, s, q, R);
  };
  const ScalingSpec inverse(1.0 / s.lambda);
  auto bps = mapped_breakpoints(u, [&](double b) { return phi_lambda(b, inverse, q, R); });
  return RadialProfile(value, deriv, R, bps, u.name() + "/scaled");
}

ZonalFunction scale_ball(const ZonalFunction& u, ScalingSpec s, const InequalityParams& params) {
  return ZonalFunction{scale_ball(u.radial, s, params), u.angular};
}

RadialProfile scale_ball_critical(const RadialProfile& u, ScalingSpec s, int n, double R) {
  require_ball_profile(u, R);
  const QIndex q = QIndex::critical();
  const double weight = std::pow(s.lambda, -(n - 1.0) / n);
  auto value = [=](double r) {
    if (r <= 0.0) return weight * u(0.0);
    if (r >= R) return weight * u(R);
    return weight * u(phi_lambda(r, s, q, R));
  };
  auto deriv = [=](double r) {
    if (r <= 0.0 || r >= R) return 0.0;
    const double inner = u.derivative(phi_lambda(r, s, q, R));
    if (inner == 0.0) return 0.0;
    return weight * inner * phi_lambda_prime(r, s, q, R);
  };
  const ScalingSpec inverse(1.0 / s.lambda);
  auto bps = mapped_breakpoints(u, [&](double b) { return phi_lambda(b, inverse, q, R); });
  return RadialProfile(value, deriv, R, bps, u.name() + "/scaled-critical");
}

RadialProfile dilate(const RadialProfile& v, ScalingSpec s, int n, double p) {
  const double mu = s.lambda;
  const double weight = std::pow(mu, (n - p) / p);
  auto value = [=](double rho) { return weight * v(mu * rho); };
  auto deriv = [=](double rho) { return weight * mu * v.derivative(mu * rho); };
  auto bps = mapped_breakpoints(v, [mu](double b) { return b / mu; });
  return RadialProfile(value, deriv, v.support_end() / mu, bps, v.name() + "/dilated");
}

double space_radius(double r, double alpha, QIndex q, double R) {
  if (!(alpha > 0.0)) throw DomainError("space_radius: alpha must be positive");
  if (q.is_critical() || !(q.value() > 1.0)) throw DomainError("space_radius: need q > 1");
  if (!(r > 0.0 && r < R)) throw DomainError("space_radius: radius outside (0, R)");
  // -(q-1) log_q(r/R) = (r/R)^{1-q} - 1
  const double x = (1.0 - q.value()) * std::log(r / R);
  return R * std::exp(-alpha * log_expm1(x));
}

double ball_radius(double rho, double alpha, QIndex q, double R) {
  if (!(alpha > 0.0)) throw DomainError("ball_radius: alpha must be positive");
  if (q.is_critical() || !(q.value() > 1.0)) throw DomainError("ball_radius: need q > 1");
  if (!(rho > 0.0)) throw DomainError("ball_radius: radius must be positive");
  if (!std::isfinite(rho)) return R;
  const double w = std::exp(-std::log(rho / R) / alpha);
  return R * std::exp(-std::log1p(w) / (q.value() - 1.0));
}

RadialProfile to_ball(const RadialProfile& v, const InequalityParams& params) {
  if (v.on_ball()) throw DomainError("to_ball: profile must live on the whole space");
  const double R = params.R;
  const double alpha = params.alpha;
  const QIndex q(params.q);
  const double qm1 = params.q - 1.0;
  auto value = [=](double r) {
    if (r <= 0.0) return v(0.0);
    if (r >= R) return 0.0;
    return v(space_radius(r, alpha, q, R));
  };
  auto deriv = [=](double r) {
    if (r <= 0.0 || r >= R) return 0.0;
    const double rho = space_radius(r, alpha, q, R);
    const double dv = v.derivative(rho);
    if (dv == 0.0) return 0.0;
    // rho' = alpha (q-1) rho (r/R)^{-q} / (R X), X = (r/R)^{1-q} - 1
    const double lr = std::log(r / R);
    const double logX = log_expm1(-qm1 * lr);
    const double drho = alpha * qm1 * std::exp(std::log(rho) - params.q * lr - logX) / R;
    return dv * drho;
  };
  auto bps = mapped_breakpoints(v, [&](double b) { return ball_radius(b, alpha, q, R); });
  return RadialProfile(value, deriv, R, bps, v.name() + "/ball");
}

ZonalFunction to_ball(const ZonalFunction& v, const InequalityParams& params) {
  return ZonalFunction{to_ball(v.radial, params), v.angular};
}

RadialProfile from_ball(const RadialProfile& u, const InequalityParams& params) {
  const double R = params.R;
  require_ball_profile(u, R);
  const double alpha = params.alpha;
  const QIndex q(params.q);
  const double qm1 = params.q - 1.0;
  auto value = [=](double rho) {
    if (rho <= 0.0) return u(0.0);
    return u(ball_radius(rho, alpha, q, R));
  };
  auto deriv = [=](double rho) {
    if (rho <= 0.0) return 0.0;
    const double r = ball_radius(rho, alpha, q, R);
    const double du = u.derivative(r);
    if (du == 0.0) return 0.0;
    const double w = std::exp(-std::log(rho / R) / alpha);
    const double dr = r * (w / (1.0 + w)) / (qm1 * alpha * rho);
    return du * dr;
  };
  std::vector<double> bps;
  for (double b : u.breakpoints()) {
    if (b > 0.0 && b < R) bps.push_back(space_radius(b, alpha, q, R));
  }
  return RadialProfile(value, deriv, RadialProfile::kWholeSpace, bps, u.name() + "/space");
}

ZonalFunction from_ball(const ZonalFunction& u, const InequalityParams& params) {
  return ZonalFunction{from_ball(u.radial, params), u.angular};
}

double ode_parameter_for_scaling(double mu, double theta) {
  if (!(mu > 0.0)) throw DomainError("scale factor must be positive");
  return std::pow(mu, -(theta - 1.0) / theta);
}

double ode_solution(ScalingSpec s, const InequalityParams& params, double r) {
  require_radius(r, params.R);
  const double theta = params.theta;
  const double big_lambda = std::pow(s.lambda, -theta / (theta - 1.0));
  return phi_lambda(r, ScalingSpec(big_lambda), QIndex(params.q), params.R);
}

IdentitySides ode_sides(ScalingSpec s, const InequalityParams& params, double r) {
  if (!(r > 0.0 && r <= params.R)) throw DomainError("ode_residual: radius outside (0, R]");
  const double theta = params.theta;
  const double big_lambda = std::pow(s.lambda, -theta / (theta - 1.0));
  const ScalingSpec relabeled(big_lambda);
  const QIndex q(params.q);
  const double phi = phi_lambda(r, relabeled, q, params.R);
  const double dphi = phi_lambda_prime(r, relabeled, q, params.R);
  const double m = params.n * theta / params.p - 1.0;
  return {std::pow(s.lambda, theta) * std::pow(r, m) * std::pow(dphi, theta - 1.0), std::pow(phi, m)};
}

double ode_residual(ScalingSpec s, const InequalityParams& params, double r) {
  const IdentitySides d = ode_sides(s, params, r);
  return d.lhs - d.rhs;
}

IdentitySides intertwine_sides(const RadialProfile& v, ScalingSpec s, double alpha, QIndex q, double R, double r) {
  if (!(r > 0.0 && r < R)) throw DomainError("intertwine_gap: radius outside (0, R)");
  const double scaled = phi_lambda(r, s, q, R);
  return {v(space_radius(scaled, alpha, q, R)), v(std::pow(s.lambda, -alpha) * space_radius(r, alpha, q, R))};
}

double intertwine_gap(const RadialProfile& v, ScalingSpec s, double alpha, QIndex q, double R, double r) {
  const IdentitySides d = intertwine_sides(v, s, alpha, q, R, r);
  return std::abs(d.lhs - d.rhs);
}

double intertwine_gap(const RadialProfile& v, ScalingSpec s, const InequalityParams& params, double r) {
  return intertwine_gap(v, s, params.alpha, QIndex(params.q), params.R, r);
}

} // namespace sharpineq
