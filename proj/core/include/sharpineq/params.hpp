#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sharpineq {

/// Parameter bundle (n, p, theta, sigma, R) with the exponents derived from
/// it. Construct through make_params(); instances are always valid.
struct InequalityParams {
  int n = 0;
  double p = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double R = 0.0;

  double p_star = 0.0; ///< np/(n-p)
  double q = 0.0;      ///< 1 + ((n-p)/p) * theta/(theta-1)
  double alpha = 0.0;  ///< (p/(n-p)) * (theta-1)/theta, so alpha*(q-1) == 1
  double C = 0.0;      ///< R * alpha^alpha

  /// q-index of the theta == p case, (n-1)/(p-1).
  double sobolev_q() const { return (n - 1.0) / (p - 1.0); }
  bool homogeneous() const;      ///< theta == sigma
  bool sobolev_exponents() const; ///< theta == p and sigma == p*
};

/// Absolute slack used by every window check so that sigma == p* passes.
inline constexpr double kWindowSlack = 1e-12;

/// Validates (n, p, theta, sigma, R) and fills the derived exponents.
/// Throws DomainError naming the violated constraint.
InequalityParams make_params(int n, double p, double theta, double sigma, double R);

/// Convenience for the Sobolev exponents theta = p, sigma = p*.
InequalityParams sobolev_params(int n, double p, double R);

/// Convenience for the Hardy exponents theta = sigma = p.
InequalityParams hardy_params(int n, double p, double R);

/// Bundle for the p = n inequalities (alvino, hardy-critical), which only
/// read n and R: p = theta = sigma = n, q = 1, p* = alpha = C = inf.
InequalityParams critical_params(int n, double R);

enum class InequalityId {
  SobolevRn,
  CknRn,
  CknRnHomog,
  BallSobolevRadial,
  BallSobolevGeneral,
  BallCkn,
  BallCknHomog,
  HardyBall,
  HardyCritical,
  Alvino,
};

std::string_view to_string(InequalityId id);
std::optional<InequalityId> parse_inequality_id(std::string_view tag);
const std::vector<InequalityId>& all_inequality_ids();

/// True for the ids whose integrals live on B_R.
bool is_ball_inequality(InequalityId id);

} // namespace sharpineq
