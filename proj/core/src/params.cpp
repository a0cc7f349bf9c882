#include "sharpineq/params.hpp"

#include "sharpineq/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace sharpineq {

namespace {

constexpr std::array<std::pair<InequalityId, std::string_view>, 10> kIdTags{{
    {InequalityId::SobolevRn, "sobolev-rn"},
    {InequalityId::CknRn, "ckn-rn"},
    {InequalityId::CknRnHomog, "ckn-rn-homog"},
    {InequalityId::BallSobolevRadial, "ball-sobolev-radial"},
    {InequalityId::BallSobolevGeneral, "ball-sobolev-general"},
    {InequalityId::BallCkn, "ball-ckn"},
    {InequalityId::BallCknHomog, "ball-ckn-homog"},
    {InequalityId::HardyBall, "hardy-ball"},
    {InequalityId::HardyCritical, "hardy-critical"},
    {InequalityId::Alvino, "alvino"},
}};

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kWindowSlack * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace

bool InequalityParams::homogeneous() const { return nearly_equal(theta, sigma); }

bool InequalityParams::sobolev_exponents() const {
  return nearly_equal(theta, p) && nearly_equal(sigma, p_star);
}

InequalityParams make_params(int n, double p, double theta, double sigma, double R) {
  if (n < 2) throw DomainError("n must be an integer >= 2");
  if (!std::isfinite(p) || !(p > 1.0 && p < n)) throw DomainError("p not in (1,n)");
  if (!std::isfinite(theta) || !(theta > 1.0)) throw DomainError("theta must exceed 1");
  if (!std::isfinite(sigma) || !(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!std::isfinite(R) || !(R > 0.0)) throw DomainError("R must be positive");

  const double gap = 1.0 / theta - 1.0 / sigma;
  if (gap < -kWindowSlack || gap > 1.0 / n + kWindowSlack) {
    throw DomainError("sigma window violated: need 0 <= 1/theta - 1/sigma <= 1/n");
  }

  InequalityParams out;
  out.n = n;
  out.p = p;
  out.theta = theta;
  out.sigma = sigma;
  out.R = R;
  out.p_star = n * p / (n - p);
  out.alpha = (p / (n - p)) * ((theta - 1.0) / theta);
  out.q = 1.0 + 1.0 / out.alpha;
  out.C = R * std::pow(out.alpha, out.alpha);
  return out;
}

InequalityParams sobolev_params(int n, double p, double R) {
  if (!(p < n)) throw DomainError("p not in (1,n)");
  return make_params(n, p, p, n * p / (n - p), R);
}

InequalityParams hardy_params(int n, double p, double R) { return make_params(n, p, p, p, R); }

InequalityParams critical_params(int n, double R) {
  if (n < 2) throw DomainError("n must be an integer >= 2");
  if (!std::isfinite(R) || !(R > 0.0)) throw DomainError("R must be positive");
  constexpr double inf = std::numeric_limits<double>::infinity();
  InequalityParams out;
  out.n = n;
  out.p = n;
  out.theta = n;
  out.sigma = n;
  out.R = R;
  out.p_star = inf;
  out.alpha = inf;
  out.q = 1.0;
  out.C = inf;
  return out;
}

std::string_view to_string(InequalityId id) {
  for (const auto& [key, tag] : kIdTags) {
    if (key == id) return tag;
  }
  return "unknown";
}

std::optional<InequalityId> parse_inequality_id(std::string_view tag) {
  for (const auto& [key, name] : kIdTags) {
    if (name == tag) return key;
  }
  return std::nullopt;
}

const std::vector<InequalityId>& all_inequality_ids() {
  static const std::vector<InequalityId> ids = [] {
    std::vector<InequalityId> v;
    for (const auto& entry : kIdTags) v.push_back(entry.first);
    return v;
  }();
  return ids;
}

bool is_ball_inequality(InequalityId id) {
  switch (id) {
  case InequalityId::SobolevRn:
  case InequalityId::CknRn:
  case InequalityId::CknRnHomog:
    return false;
  default:
    return true;
  }
}

} // namespace sharpineq
