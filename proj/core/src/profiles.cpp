#include "sharpineq/profiles.hpp"

#include "sharpineq/errors.hpp"
#include "sharpineq/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

namespace sharpineq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// log(a + b e^{y}) without overflow.
double log_sum(double a, double b, double y) {
  if (y > 0.0) return y + std::log(b + a * std::exp(-y));
  return std::log(a + b * std::exp(y));
}

} // namespace

RadialProfile::RadialProfile(Fn value, std::optional<Fn> derivative, double support_end,
                             std::vector<double> breakpoints, std::string name)
    : value_(std::move(value)), derivative_(std::move(derivative)), support_end_(support_end),
      breakpoints_(std::move(breakpoints)), name_(std::move(name)) {
  if (!value_) throw DomainError("RadialProfile: value function is empty");
  if (!(support_end_ > 0.0)) throw DomainError("RadialProfile: support must be non-empty");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
  std::erase_if(breakpoints_, [this](double b) { return !(b > 0.0 && b < support_end_); });
}

double RadialProfile::operator()(double r) const {
  if (r > support_end_) return 0.0;
  return value_(r);
}

double RadialProfile::derivative(double r) const {
  if (r >= support_end_) return 0.0;
  if (derivative_) return (*derivative_)(r);
  return finite_difference(r);
}

double RadialProfile::finite_difference(double r) const {
  const double h = std::cbrt(kEps) * std::max(1.0, r);
  double lo = r - h;
  double hi = r + h;
  // Keep the stencil on one side of the nearest breakpoint.
  for (double b : breakpoints_) {
    if (b > lo && b < r) lo = r;
    if (b < hi && b > r) hi = r;
  }
  if (lo <= 0.0) lo = r;
  if (hi >= support_end_) hi = r;
  if (lo == r && hi == r) return 0.0;
  if (lo == r) return (value_(r + h) - value_(r)) / h;
  if (hi == r) return (value_(r) - value_(r - h)) / h;
  return (value_(hi) - value_(lo)) / (hi - lo);
}

RadialProfile RadialProfile::without_derivative() const {
  return RadialProfile(value_, std::nullopt, support_end_, breakpoints_, name_ + "/fd");
}

RadialProfile RadialProfile::with_boundary_chart(BoundaryChart chart) const {
  if (!on_ball()) throw DomainError("boundary chart needs a ball profile");
  if (!(chart.kappa > 0.0) || !chart.value || !chart.derivative) throw DomainError("incomplete boundary chart");
  RadialProfile out = *this;
  out.chart_ = std::move(chart);
  return out;
}

AngularFactor AngularFactor::one() {
  return AngularFactor{[](double) { return 1.0; }, [](double) { return 0.0; }, true};
}

void ExtremalParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("extremal parameters a, b must be positive");
  }
}

RadialProfile aubin_talenti(ExtremalParams e, int n, double p) {
  e.validate();
  if (!(p > 1.0 && p < n)) throw DomainError("aubin_talenti: p not in (1,n)");
  const double gam = p / (p - 1.0);
  const double expo = 1.0 - n / p;
  auto value = [=](double rho) {
    if (rho <= 0.0) return std::pow(e.a, expo);
    if (!std::isfinite(rho)) return 0.0;
    return std::exp(expo * log_sum(e.a, e.b, gam * std::log(rho)));
  };
  auto deriv = [=](double rho) {
    if (rho <= 0.0 || !std::isfinite(rho)) return 0.0;
    const double lr = std::log(rho);
    const double logA = log_sum(e.a, e.b, gam * lr);
    // (1 - n/p) b gam rho^{gam-1} A^{-n/p}
    return expo * e.b * gam * std::exp((gam - 1.0) * lr - (n / p) * logA);
  };
  return RadialProfile(value, deriv, RadialProfile::kWholeSpace, {}, "aubin-talenti");
}

RadialProfile ball_extremal(ExtremalParams e, int n, double p, double R) {
  e.validate();
  if (!(p > 1.0 && p < n)) throw DomainError("ball_extremal: p not in (1,n)");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("ball_extremal: R must be positive");
  const double k = (n - p) / (p - 1.0);
  const double m = p / (n - p);
  const double expo = 1.0 - n / p;
  // log of the brace r^{-k} - R^{-k}.
  auto log_brace = [=](double r) {
    const double x = -k * std::log(r / R);
    if (x > 30.0) return x + std::log1p(-std::exp(-x)) - k * std::log(R);
    return std::log(std::expm1(x)) - k * std::log(R);
  };
  auto value = [=](double r) {
    if (r <= 0.0) return std::pow(e.a, expo);
    if (r >= R) return 0.0;
    const double log_inner = -m * log_brace(r);
    return std::exp(expo * log_sum(e.a, e.b, log_inner));
  };
  auto deriv = [=](double r) {
    if (r <= 0.0 || r >= R) return 0.0;
    const double lb = log_brace(r);
    const double logA = log_sum(e.a, e.b, -m * lb);
    // (1 - n/p) b (p/(p-1)) r^{-k-1} B^{-m-1} A^{-n/p}
    return expo * e.b * (p / (p - 1.0)) *
           std::exp(-(k + 1.0) * std::log(r) - (m + 1.0) * lb - (n / p) * logA);
  };
  return RadialProfile(value, deriv, R, {}, "ball-extremal");
}

RadialProfile moser(int n, double R, double rho) {
  if (n < 2) throw DomainError("moser: n must be >= 2");
  if (!(rho > 0.0 && rho < R)) throw DomainError("moser: need 0 < rho < R");
  const double L = std::log(R / rho);
  const double plateau = std::pow(L, (n - 1.0) / n);
  const double scale = std::pow(L, 1.0 / n);
  auto value = [=](double r) {
    if (r <= rho) return plateau;
    if (r >= R) return 0.0;
    return std::log(R / r) / scale;
  };
  auto deriv = [=](double r) {
    if (r <= rho || r >= R) return 0.0;
    return -1.0 / (r * scale);
  };
  return RadialProfile(value, deriv, R, {rho}, "moser");
}

double moser_gradient_norm(int n) { return std::pow(sphere_area(n), 1.0 / n); }

RadialProfile bump(double R, double center, double width) {
  if (!(width > 0.0)) throw DomainError("bump: width must be positive");
  if (!(center >= 0.0)) throw DomainError("bump: center must be non-negative");
  if (!(center + width < R)) throw DomainError("bump: support must lie strictly inside (0,R)");
  auto value = [=](double r) {
    const double z = (r - center) / width;
    if (std::abs(z) >= 1.0) return 0.0;
    const double z2 = z * z;
    return std::exp(-z2 / (1.0 - z2));
  };
  auto deriv = [=](double r) {
    const double z = (r - center) / width;
    if (std::abs(z) >= 1.0) return 0.0;
    const double z2 = z * z;
    const double d = 1.0 - z2;
    return std::exp(-z2 / d) * (-2.0 * z / (d * d)) / width;
  };
  std::vector<double> bps{center + width};
  if (center > 0.0) bps.push_back(center);
  if (center - width > 0.0) bps.push_back(center - width);
  return RadialProfile(value, deriv, R, bps, "bump");
}

RadialProfile gaussian(double scale) {
  if (!(scale > 0.0)) throw DomainError("gaussian: scale must be positive");
  auto value = [=](double rho) {
    const double z = rho / scale;
    return std::exp(-z * z);
  };
  auto deriv = [=](double rho) {
    const double z = rho / scale;
    if (z > 40.0) return 0.0;
    return -2.0 * z / scale * std::exp(-z * z);
  };
  return RadialProfile(value, deriv, RadialProfile::kWholeSpace, {}, "gaussian");
}

RadialProfile truncate_to_ball(const RadialProfile& f, double R) {
  if (!(R > 0.0) || !(R <= f.support_end())) throw DomainError("truncate_to_ball: R outside the support");
  const double floor_value = f(R);
  auto value = [f, floor_value](double r) { return std::max(f(r) - floor_value, 0.0); };
  auto deriv = [f, floor_value](double r) { return f(r) > floor_value ? f.derivative(r) : 0.0; };
  std::vector<double> bps(f.breakpoints().begin(), f.breakpoints().end());
  return RadialProfile(value, deriv, R, bps, f.name() + "/truncated");
}

// ---------------------------------------------------------------------------
// Rearrangement

namespace {

enum class Trend { Increasing, Decreasing, Flat };

// Root of h in a sign-changing bracket, to full double precision.
template <class F> double solve(F h, double lo, double hi, double h_lo, double h_hi) {
  std::uintmax_t iters = 200;
  const auto [a, b] =
      boost::math::tools::toms748_solve(h, lo, hi, h_lo, h_hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

struct Piece {
  double lo;
  double hi;
  Trend trend;
  double g_lo; // |f| at the ends
  double g_hi;
};

struct Level {
  double measure = 0.0;
  std::vector<double> crossings; // radii where |f| == lambda inside a piece
};

class MonotonePieces {
public:
  MonotonePieces(const RadialProfile& f, int n) : f_(f), n_(n), omega_(sphere_area(n)) {
    if (!f.on_ball()) throw DomainError("rearrangement needs a profile on a ball");
    const double R = f.support_end();
    std::vector<double> edges{0.0};
    for (double b : f.breakpoints()) edges.push_back(b);
    edges.push_back(R);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) pieces_.push_back(classify(edges[i], edges[i + 1]));
    for (const Piece& p : pieces_) max_ = std::max({max_, p.g_lo, p.g_hi});
  }

  double volume(double r) const { return omega_ / n_ * std::pow(r, n_); }
  double max_value() const { return max_; }
  const RadialProfile& profile() const { return f_; }

  /// True when lambda is the value of a flat piece, where f* has a plateau.
  bool flat_at(double lambda) const {
    for (const Piece& p : pieces_) {
      if (p.trend == Trend::Flat && std::abs(p.g_lo - lambda) <= 1e-12 * std::max(1.0, lambda)) return true;
    }
    return false;
  }

  Level level(double lambda, bool want_crossings) const {
    Level out;
    for (const Piece& p : pieces_) {
      const double top = std::max(p.g_lo, p.g_hi);
      const double bottom = std::min(p.g_lo, p.g_hi);
      if (top <= lambda) continue;
      if (p.trend == Trend::Flat || bottom > lambda) {
        out.measure += volume(p.hi) - volume(p.lo);
        continue;
      }
      const double root = crossing(p, lambda);
      if (want_crossings) out.crossings.push_back(root);
      if (p.trend == Trend::Increasing) {
        out.measure += volume(p.hi) - volume(root);
      } else {
        out.measure += volume(root) - volume(p.lo);
      }
    }
    return out;
  }

private:
  double g(double r) const { return std::abs(f_(r)); }

  Piece classify(double lo, double hi) const {
    constexpr int kSamples = 64;
    std::vector<double> vals(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) vals[i] = g(lo + (hi - lo) * i / kSamples);
    const double scale = std::max(1.0, *std::max_element(vals.begin(), vals.end()));
    const double slack = 1e-12 * scale;
    const double rise = vals.back() - vals.front();
    Trend trend = Trend::Flat;
    if (rise > slack) trend = Trend::Increasing;
    if (rise < -slack) trend = Trend::Decreasing;
    for (int i = 0; i < kSamples; ++i) {
      const double step = vals[i + 1] - vals[i];
      const bool bad = (trend == Trend::Increasing && step < -slack) ||
                       (trend == Trend::Decreasing && step > slack) ||
                       (trend == Trend::Flat && std::abs(step) > slack);
      if (bad) {
        throw DomainError("profile '" + f_.name() + "' is not monotone on a piece; breakpoints are inconsistent");
      }
    }
    return Piece{lo, hi, trend, vals.front(), vals.back()};
  }

  double crossing(const Piece& p, double lambda) const {
    const double sign = p.trend == Trend::Increasing ? 1.0 : -1.0;
    auto h = [&](double r) { return sign * (g(r) - lambda); };
    const double h_lo = h(p.lo);
    const double h_hi = h(p.hi);
    if (h_lo >= 0.0) return p.lo;
    if (h_hi <= 0.0) return p.hi;
    return solve(h, p.lo, p.hi, h_lo, h_hi);
  }

  RadialProfile f_;
  int n_;
  double omega_;
  double max_ = 0.0;
  std::vector<Piece> pieces_;
};

} // namespace

double distribution_function(const RadialProfile& f, int n, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("distribution_function: lambda must be non-negative");
  const MonotonePieces pieces(f, n);
  return pieces.level(lambda, false).measure;
}

RadialProfile schwarz_rearrange(const RadialProfile& f, int n) {
  auto pieces = std::make_shared<const MonotonePieces>(f, n);

  auto level_at_radius = [pieces](double r) {
    const double target = pieces->volume(r);
    const double top = pieces->max_value();
    if (target <= 0.0) return top;
    auto h = [&](double lambda) { return pieces->level(lambda, false).measure - target; };
    const double h_lo = h(0.0);
    if (h_lo <= 0.0) return 0.0;
    return solve(h, 0.0, top, h_lo, h(top));
  };
  auto value = [level_at_radius](double r) { return level_at_radius(r); };
  auto deriv = [pieces, level_at_radius, n](double r) {
    const double lambda = level_at_radius(r);
    if (lambda <= 0.0 || r <= 0.0 || pieces->flat_at(lambda)) return 0.0;
    const Level lv = pieces->level(lambda, true);
    double denom = 0.0;
    for (double ri : lv.crossings) {
      const double slope = std::abs(pieces->profile().derivative(ri));
      if (slope == 0.0) return 0.0;
      denom += std::pow(ri, n - 1) / slope;
    }
    if (denom == 0.0) return 0.0;
    return -std::pow(r, n - 1) / denom;
  };
  return RadialProfile(value, deriv, f.support_end(), {}, f.name() + "*");
}

double profile_sup(const RadialProfile& f) {
  double best = 0.0;
  const double end = f.on_ball() ? f.support_end() : 1e6;
  constexpr int kGrid = 4096;
  for (int i = 0; i <= kGrid; ++i) {
    const double r = f.on_ball() ? end * i / kGrid : std::expm1(std::log1p(end) * i / kGrid);
    best = std::max(best, std::abs(f(r)));
  }
  for (double b : f.breakpoints()) best = std::max(best, std::abs(f(b)));
  return best;
}

} // namespace sharpineq
