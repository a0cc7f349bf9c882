#include "sharpineq/special.hpp"

#include "sharpineq/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace sharpineq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGammaOverflow = 171.6243769563027;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Gamma via Lanczos on x >= 0.5; reflection below.
double lanczos_gamma(double x) {
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // t^{z+0.5} e^{-t} split in two halves to delay overflow near x = 171.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * sum;
}

double lanczos_log_gamma(double x) {
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

} // namespace

QIndex::QIndex(double q) : q_(q), critical_(false) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("q-index must be positive");
}

QIndex QIndex::critical() { return QIndex(1.0, true); }

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  if (x > kGammaOverflow) throw DomainError("gamma: overflow for argument above 171.62");
  // Exact on small integers so that factorial identities hold to the last bit.
  if (x == std::floor(x) && x <= 20.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  return lanczos_gamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) return std::log(lanczos_gamma(x));
  return lanczos_log_gamma(x);
}

double q_log(QIndex q, double r) {
  if (!(r > 0.0)) throw DomainError("q_log: argument must be positive");
  const double L = std::log(r);
  if (q.is_critical()) return L;
  const double e = 1.0 - q.value();
  if (std::abs(e) < kCriticalSwitch) return L * (1.0 + 0.5 * e * L);
  return std::expm1(e * L) / e;
}

double q_exp(QIndex q, double s) {
  if (q.is_critical()) return std::exp(s);
  const double e = 1.0 - q.value();
  if (std::abs(e) < kCriticalSwitch) return std::exp(s * (1.0 - 0.5 * e * s));
  const double base = 1.0 + e * s;
  if (!(base > 0.0)) throw DomainError("q_exp: 1 + (1-q)s must be positive");
  return std::exp(std::log1p(e * s) / e);
}

double sobolev_constant(int n, double p) {
  if (n < 2) throw DomainError("sobolev_constant: n must be >= 2");
  if (!(p >= 1.0 && p < n)) throw DomainError("sobolev_constant: p not in [1,n)");
  const double nn = n;
  if (p == 1.0) {
    return std::sqrt(kPi) * nn / std::pow(gamma(1.0 + nn / 2.0), 1.0 / nn);
  }
  // Gamma ratio through log-gamma so that large n stays finite.
  const double log_ratio = log_gamma(nn / p) + log_gamma(nn + 1.0 - nn / p) - log_gamma(nn) -
                           log_gamma(1.0 + nn / 2.0);
  return std::sqrt(kPi) * std::pow(nn, 1.0 / p) * std::pow((nn - p) / (p - 1.0), (p - 1.0) / p) *
         std::exp(log_ratio / nn);
}

double alvino_constant(int n) {
  if (n < 2) throw DomainError("alvino_constant: n must be >= 2");
  const double nn = n;
  return std::sqrt(kPi) * std::pow(nn, 1.0 / nn) / std::pow(gamma(1.0 + nn / 2.0), 1.0 / nn);
}

double ball_constant(int n, double p) {
  if (n < 2) throw DomainError("ball_constant: n must be >= 2");
  if (!(p > 1.0 && p < n)) throw DomainError("ball_constant: p not in (1,n)");
  const double nn = n;
  return sobolev_constant(n, p) * std::pow((nn - p) / (p - 1.0), -(nn - 1.0) / nn);
}

double hardy_ball_constant(double p) {
  if (!(p > 1.0)) throw DomainError("hardy_ball_constant: p must exceed 1");
  return std::pow((p - 1.0) / p, p);
}

double ckn_homog_constant(const InequalityParams& params) {
  if (!params.homogeneous()) throw DomainError("ckn_homog_constant: requires theta == sigma");
  return std::pow((params.n - params.p) / params.p, params.theta);
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: n must be >= 1");
  const double nn = n;
  return 2.0 * std::pow(kPi, nn / 2.0) / gamma(nn / 2.0);
}

} // namespace sharpineq
