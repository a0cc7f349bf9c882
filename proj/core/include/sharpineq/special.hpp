#pragma once

#include "sharpineq/params.hpp"

namespace sharpineq {

/// Index of the Tsallis q-logarithm / q-exponential. The critical index
/// stands for the q -> 1 limit, where both reduce to log / exp.
class QIndex {
public:
  /// Throws DomainError unless q > 0.
  explicit QIndex(double q);
  static QIndex critical();

  double value() const noexcept { return q_; }
  bool is_critical() const noexcept { return critical_; }

private:
  QIndex(double q, bool critical) : q_(q), critical_(critical) {}
  double q_;
  bool critical_;
};

/// |q - 1| below this uses a second-order expansion around log / exp.
inline constexpr double kCriticalSwitch = 1e-6;

/// Gamma function for x > 0 (Lanczos, g = 7). Throws DomainError for x <= 0
/// and for x beyond the double overflow point (~171.62).
double gamma(double x);
double log_gamma(double x);

/// (r^{1-q} - 1)/(1 - q); log r at the critical index.
double q_log(QIndex q, double r);
/// [1 + (1-q) s]^{1/(1-q)}; exp s at the critical index.
double q_exp(QIndex q, double s);

/// Sharp whole-space Sobolev constant S_{n,p}, 1 <= p < n.
double sobolev_constant(int n, double p);
/// sqrt(pi) n^{1/n} / Gamma(1 + n/2)^{1/n}; equals omega_{n-1}^{1/n}.
double alvino_constant(int n);
/// S_{n,p} ((n-p)/(p-1))^{-(n-1)/n}, the sharp constant on B_R for radial
/// functions; tends to alvino_constant(n) as p -> n.
double ball_constant(int n, double p);
/// ((p-1)/p)^p.
double hardy_ball_constant(double p);
/// ((n-p)/p)^theta, the homogeneous weighted Hardy constant (theta == sigma).
double ckn_homog_constant(const InequalityParams& params);

/// Surface measure omega_{n-1} = 2 pi^{n/2} / Gamma(n/2) of S^{n-1}.
double sphere_area(int n);

} // namespace sharpineq
