#include "sharpineq/functionals.hpp"

#include "sharpineq/errors.hpp"
#include "sharpineq/geometry.hpp"
#include "sharpineq/special.hpp"
#include "sharpineq/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sharpineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class GradKind { Full, Radial, L };

using LogWeight = std::function<double(const RadialPoint&)>;

// Both sides of one inequality as weighted power integrals:
// side = (int exp(logw) |g|^power dmu)^{1/power}.
struct SideSpec {
  double power = 1.0;
  LogWeight logw;
  double singular_exponent = 0.0; // power of 1/s in the weight
};

struct InequalitySpec {
  bool ball = false;
  double kappa = 1.0; // boundary coordinate s = 1 - (r/R)^kappa
  bool zonal_allowed = false;
  SideSpec lhs;
  SideSpec rhs;
  GradKind grad = GradKind::Full;
};

LogWeight power_of_r(double a) {
  if (a == 0.0) return [](const RadialPoint&) { return 0.0; };
  return [a](const RadialPoint& pt) { return a * std::log(pt.r); };
}

InequalitySpec spec_for(InequalityId id, const InequalityParams& P) {
  const double n = P.n;
  const double p = P.p;
  const double th = P.theta;
  const double sg = P.sigma;
  const double q0m1 = (n - p) / (p - 1.0);
  InequalitySpec s;
  switch (id) {
  case InequalityId::SobolevRn:
    s.zonal_allowed = true;
    s.lhs = {P.p_star, power_of_r(0.0)};
    s.rhs = {p, power_of_r(0.0)};
    break;
  case InequalityId::CknRn:
    s.zonal_allowed = true;
    s.lhs = {sg, power_of_r(n * sg / P.p_star - n)};
    s.rhs = {th, power_of_r(n * th / p - n)};
    break;
  case InequalityId::CknRnHomog:
    if (!P.homogeneous()) throw DomainError("ckn-rn-homog requires theta == sigma");
    s.lhs = {th, power_of_r(n * th / P.p_star - n)};
    s.rhs = {th, power_of_r(n * th / p - n)};
    s.grad = GradKind::Radial;
    break;
  case InequalityId::BallSobolevRadial:
  case InequalityId::BallSobolevGeneral: {
    const double e = p * (n - 1.0) / (n - p);
    s.ball = true;
    s.kappa = q0m1;
    s.lhs = {P.p_star, [e, q0m1](const RadialPoint& pt) { return -e * std::log(pt.s / q0m1); }, e};
    s.rhs = {p, power_of_r(0.0)};
    if (id == InequalityId::BallSobolevGeneral) {
      s.zonal_allowed = true;
      s.grad = GradKind::L;
    }
    break;
  }
  case InequalityId::BallCkn: {
    const double a = n * sg / P.p_star - n;
    const double e = 1.0 + (th - 1.0) * sg / th;
    s.ball = true;
    s.kappa = P.q - 1.0;
    s.zonal_allowed = true;
    s.lhs = {sg, [a, e](const RadialPoint& pt) { return a * std::log(pt.r) - e * std::log(pt.s); }, e};
    s.rhs = {th, power_of_r(n * th / p - n)};
    s.grad = GradKind::L;
    break;
  }
  case InequalityId::BallCknHomog: {
    if (!P.homogeneous()) throw DomainError("ball-ckn-homog requires theta == sigma");
    const double a = n * th / P.p_star - n;
    s.ball = true;
    s.kappa = P.q - 1.0;
    s.lhs = {th, [a, th](const RadialPoint& pt) { return a * std::log(pt.r) - th * std::log(pt.s); }, th};
    s.rhs = {th, power_of_r(n * th / p - n)};
    s.grad = GradKind::Radial;
    break;
  }
  case InequalityId::HardyBall:
    s.ball = true;
    s.kappa = q0m1;
    s.lhs = {p, [p, q0m1](const RadialPoint& pt) { return -p * (std::log(pt.r) + std::log(pt.s / q0m1)); }, p};
    s.rhs = {p, power_of_r(0.0)};
    s.grad = GradKind::Radial;
    break;
  case InequalityId::HardyCritical:
    s.ball = true;
    s.kappa = 1.0;
    s.lhs = {n, [n](const RadialPoint& pt) { return -n * (std::log(pt.r) + std::log(-std::log1p(-pt.s))); }, n};
    s.rhs = {n, power_of_r(0.0)};
    s.grad = GradKind::Radial;
    break;
  case InequalityId::Alvino:
    s.ball = true;
    s.kappa = 1.0;
    s.lhs = {1.0, power_of_r(0.0)}; // unused: sup functional
    s.rhs = {n, power_of_r(0.0)};
    break;
  }
  return s;
}

// Uniform access to radial and zonal trials.
struct Sampler {
  const RadialProfile* f = nullptr;
  const ZonalFunction* z = nullptr; // set for genuinely zonal trials
  double c = 1.0;                  // constant angular factor
  int n = 0;
  const BoundaryChart* chart = nullptr; // usable when its kappa matches the domain

  bool zonal() const { return z != nullptr; }
  double radial_value(const RadialPoint& pt) const {
    if (chart && pt.s > 0.0) return chart->value(pt.s);
    return (*f)(pt.r);
  }
  double radial_derivative(const RadialPoint& pt) const {
    if (chart && pt.s > 0.0) return chart->derivative(pt.r, pt.s);
    return f->derivative(pt.r);
  }
  double abs_value(const RadialPoint& pt, double angle) const {
    const double fr = radial_value(pt);
    if (fr == 0.0) return 0.0;
    return std::abs(fr) * (zonal() ? std::abs(z->angular.value(angle)) : std::abs(c));
  }
  GradientSplit grad(const RadialPoint& pt, double angle) const {
    if (zonal()) {
      // A quadrature node landing exactly on a kink is a null set; step off it.
      const auto bps = f->breakpoints();
      double r = pt.r;
      while (std::find(bps.begin(), bps.end(), r) != bps.end()) r = std::nextafter(r, 0.0);
      return gradient_split(*z, n, r, angle);
    }
    return {std::abs(radial_derivative(pt)) * std::abs(c), 0.0};
  }
  double angular_sup() const {
    if (!zonal()) return std::abs(c);
    const double lo = n == 2 ? 0.0 : -1.0;
    const double hi = n == 2 ? 2.0 * std::numbers::pi : 1.0;
    double m = 0.0;
    for (int i = 0; i <= 512; ++i) m = std::max(m, std::abs(z->angular.value(lo + (hi - lo) * i / 512.0)));
    return m;
  }
};

Sampler make_sampler(const Trial& u, int n, bool zonal_allowed, InequalityId id) {
  Sampler smp;
  smp.n = n;
  if (const auto* rp = std::get_if<RadialProfile>(&u)) {
    smp.f = rp;
    return smp;
  }
  const auto& zf = std::get<ZonalFunction>(u);
  smp.f = &zf.radial;
  if (zf.is_radial()) {
    smp.c = zf.angular.value(n == 2 ? 0.0 : 1.0);
    return smp;
  }
  if (!zonal_allowed) {
    throw DomainError(std::string(to_string(id)) + " accepts radial trials only");
  }
  smp.z = &zf;
  return smp;
}

RadialDomain make_domain(const InequalitySpec& spec, const RadialProfile& f, const InequalityParams& P,
                         InequalityId id, bool& substitution_possible) {
  const double end = spec.ball ? P.R : f.support_end();
  if (spec.ball && !(f.on_ball() && f.support_end() <= P.R * (1.0 + 1e-12))) {
    throw DomainError(std::string(to_string(id)) + " needs a trial supported in B_R");
  }
  std::vector<double> knots;
  for (double b : f.breakpoints()) {
    if (b > 0.0 && b < end) knots.push_back(b);
  }
  if (f.on_ball() && f.support_end() < end) knots.push_back(f.support_end());
  substitution_possible = spec.ball;
  if (spec.ball) return RadialDomain::ball(P.R, spec.kappa, std::move(knots));
  if (f.on_ball()) return RadialDomain::ball(f.support_end(), 1.0, std::move(knots));
  return RadialDomain::whole_space(std::move(knots));
}

void attach_chart(Sampler& smp, const InequalitySpec& spec, const InequalityParams& P) {
  const auto& ch = smp.f->boundary_chart();
  if (!ch || !spec.ball || smp.zonal()) return;
  if (std::abs(smp.f->support_end() - P.R) > 1e-15 * P.R) return;
  if (std::abs(ch->kappa - spec.kappa) > 1e-14 * spec.kappa) return;
  smp.chart = &*ch;
}

QuadratureResult integrate_trial(const Sampler& smp, const RadialDomain& dom, const QuadratureConfig& qc,
                                 const ZonalIntegrand& G) {
  if (smp.zonal()) return zonal_integral(smp.n, G, dom, qc);
  return radial_integral(smp.n, RadialIntegrand([&G](const RadialPoint& pt) { return G(pt, 0.0); }), dom, qc);
}

// Largest root integrand |u| exp(logw/power) over radius; returns (sup, argmax).
std::pair<double, double> root_sup(const std::function<double(const RadialPoint&)>& g, const RadialDomain& dom) {
  std::vector<RadialPoint> pts;
  if (dom.is_ball()) {
    const double R = dom.R;
    for (int i = 0; i < 2048; ++i) {
      const double r = R * std::pow(10.0, -8.0 + 8.0 * i / 2047.0) * 0.5;
      pts.push_back({r, dom.boundary_coordinate(r)});
    }
    const double s_half = dom.boundary_coordinate(0.5 * R);
    for (int i = 0; i < 2048; ++i) {
      const double s = s_half * std::pow(10.0, -14.0 * (i + 1) / 2048.0);
      pts.push_back({R * std::exp(std::log1p(-s) / dom.kappa), s});
    }
  } else {
    for (int i = 0; i < 4096; ++i) pts.push_back({std::pow(10.0, -8.0 + 16.0 * i / 4095.0), 1.0});
  }
  std::sort(pts.begin(), pts.end(), [](const RadialPoint& a, const RadialPoint& b) { return a.r < b.r; });
  std::size_t best = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = g(pts[i]);
    if (std::isfinite(v) && v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best_v <= 0.0) return {0.0, pts[best].r};
  // Golden-section refinement on log r between the neighbours.
  double lo = std::log(pts[best > 0 ? best - 1 : 0].r);
  double hi = std::log(pts[std::min(best + 1, pts.size() - 1)].r);
  auto at = [&](double lr) {
    const double r = std::exp(lr);
    return g(RadialPoint{r, dom.is_ball() ? dom.boundary_coordinate(r) : 1.0});
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = at(x1), f2 = at(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = at(x2);
    }
  }
  if (f1 > best_v) return {f1, std::exp(x1)};
  if (f2 > best_v) return {f2, std::exp(x2)};
  return {best_v, pts[best].r};
}

// (int exp(logw) |amp|^power dmu)^{1/power}, with a scale M pulled out of
// the power for very large exponents.
SideValue powered_side(const Sampler& smp, const RadialDomain& dom, const SideSpec& side,
                       const std::function<double(const RadialPoint&, double)>& amp, double angular_sup,
                       const std::function<double(const RadialPoint&)>& radial_amp, const FunctionalConfig& cfg,
                       bool substitute, bool cross_check) {
  const double pw = side.power;
  double logM = 0.0;
  RadialDomain d = dom;
  if (pw > 20.0) {
    auto g = [&](const RadialPoint& pt) {
      const double a = radial_amp(pt);
      if (a == 0.0) return 0.0;
      return a * std::exp(side.logw(pt) / pw);
    };
    const auto [m, rmax] = root_sup(g, dom);
    if (m > 0.0) {
      logM = std::log(m * angular_sup);
      d.breakpoints.push_back(rmax);
      std::sort(d.breakpoints.begin(), d.breakpoints.end());
    }
  }
  ZonalIntegrand G = [&](const RadialPoint& pt, double angle) {
    const double a = amp(pt, angle);
    if (a == 0.0) return 0.0;
    return std::exp(pw * (std::log(a) - logM) + side.logw(pt));
  };
  auto run = [&](bool sub) {
    QuadratureConfig qc = cfg.quad;
    qc.boundary_substitution = sub;
    return integrate_trial(smp, d, qc, G);
  };
  const QuadratureResult res = run(substitute);
  if (cfg.cross_check && cross_check && substitute) {
    const QuadratureResult raw = run(false);
    const double diff = std::abs(raw.value - res.value);
    if (diff > cfg.cross_check_tol * std::abs(res.value)) {
      throw ConvergenceError("raw and substituted quadrature disagree", res.value, diff);
    }
  }
  if (res.value <= 0.0) return {0.0, 0.0};
  const double v = std::exp(logM + std::log(res.value) / pw);
  return {v, v * res.error_estimate / (pw * res.value)};
}

void check_n(InequalityId id, const InequalityParams& P) {
  if ((id == InequalityId::HardyCritical || id == InequalityId::Alvino) && P.n < 2) {
    throw DomainError("critical inequalities need n >= 2");
  }
}

bool nonincreasing(const RadialProfile& f, double R) {
  double prev = kInf;
  for (int i = 0; i <= 2048; ++i) {
    const double r = R * (i + 0.5) / 2049.0;
    const double v = f(r);
    if (v > prev + 1e-12 * std::max(1.0, std::abs(prev))) return false;
    prev = v;
  }
  return true;
}

} // namespace

SideValue side_lhs_value(InequalityId id, const Trial& u, const InequalityParams& P, const FunctionalConfig& cfg) {
  check_n(id, P);
  const InequalitySpec spec = spec_for(id, P);
  Sampler smp = make_sampler(u, P.n, spec.zonal_allowed, id);
  if (id == InequalityId::Alvino) {
    if (!smp.f->on_ball() || smp.f->support_end() > P.R * (1.0 + 1e-12)) {
      throw DomainError("alvino needs a trial supported in B_R");
    }
    return {alvino_sup(*smp.f, P.n, P.R) * std::abs(smp.c), 0.0};
  }
  bool sub_ok = false;
  const RadialDomain dom = make_domain(spec, *smp.f, P, id, sub_ok);
  attach_chart(smp, spec, P);
  const bool substitute = sub_ok && spec.lhs.singular_exponent > cfg.substitution_threshold;
  auto amp = [&smp](const RadialPoint& pt, double angle) { return smp.abs_value(pt, angle); };
  auto ramp = [&smp](const RadialPoint& pt) { return std::abs(smp.radial_value(pt)); };
  return powered_side(smp, dom, spec.lhs, amp, smp.angular_sup(), ramp, cfg, substitute, true);
}

SideValue side_rhs_value(InequalityId id, const Trial& u, const InequalityParams& P, const FunctionalConfig& cfg) {
  check_n(id, P);
  const InequalitySpec spec = spec_for(id, P);
  Sampler smp = make_sampler(u, P.n, spec.zonal_allowed, id);
  bool sub_ok = false;
  const RadialDomain dom = make_domain(spec, *smp.f, P, id, sub_ok);
  attach_chart(smp, spec, P);
  const GradKind kind = spec.grad;
  auto amp = [&smp, kind](const RadialPoint& pt, double angle) {
    const GradientSplit g = smp.grad(pt, angle);
    switch (kind) {
    case GradKind::Radial: return g.radial_mag;
    case GradKind::Full: return std::sqrt(g.norm_sq());
    case GradKind::L: {
      const double t = g.tangential_mag == 0.0 ? 0.0 : g.tangential_mag / pt.s;
      return std::hypot(t, g.radial_mag);
    }
    }
    return 0.0;
  };
  // The 1/s of L only bites for genuinely zonal trials; the boundary
  // coordinate is used for every ball rhs regardless.
  const bool singular = smp.zonal() && kind == GradKind::L && spec.rhs.power > cfg.substitution_threshold;
  auto ramp = [&smp](const RadialPoint& pt) { return std::abs(smp.radial_derivative(pt)); };
  return powered_side(smp, dom, spec.rhs, amp, smp.angular_sup(), ramp, cfg, sub_ok, singular);
}

double side_lhs(InequalityId id, const Trial& u, const InequalityParams& params, const FunctionalConfig& cfg) {
  return side_lhs_value(id, u, params, cfg).value;
}

double side_rhs(InequalityId id, const Trial& u, const InequalityParams& params, const FunctionalConfig& cfg) {
  return side_rhs_value(id, u, params, cfg).value;
}

SharpConstant sharp_constant(InequalityId id, const InequalityParams& P, const FunctionalConfig& cfg) {
  auto homog_root = [&P] { return std::pow(ckn_homog_constant(P), 1.0 / P.theta); };
  switch (id) {
  case InequalityId::SobolevRn: return {sobolev_constant(P.n, P.p), false};
  case InequalityId::CknRn:
  case InequalityId::BallCkn: {
    if (P.sobolev_exponents()) return {sobolev_constant(P.n, P.p), false};
    if (P.homogeneous()) return {homog_root(), false};
    const QuotientMinimum m = minimize_quotient(InequalityId::CknRn, bliss_family(P), P, bliss_init(P), {}, cfg);
    return {m.quotient, true};
  }
  case InequalityId::CknRnHomog:
  case InequalityId::BallCknHomog:
    if (!P.homogeneous()) throw DomainError(std::string(to_string(id)) + " requires theta == sigma");
    return {homog_root(), false};
  case InequalityId::BallSobolevRadial:
  case InequalityId::BallSobolevGeneral: return {ball_constant(P.n, P.p), false};
  case InequalityId::HardyBall: return {std::pow(hardy_ball_constant(P.p), 1.0 / P.p), false};
  case InequalityId::HardyCritical: return {(P.n - 1.0) / P.n, false};
  case InequalityId::Alvino: return {alvino_constant(P.n), false};
  }
  throw DomainError("unknown inequality id");
}

SideReport evaluate(InequalityId id, const Trial& u, const InequalityParams& params, SharpConstant constant,
                    const FunctionalConfig& cfg) {
  const SideValue l = side_lhs_value(id, u, params, cfg);
  const SideValue r = side_rhs_value(id, u, params, cfg);
  SideReport rep;
  rep.inequality = id;
  rep.lhs = l.value;
  rep.rhs = r.value;
  rep.constant = constant.value;
  rep.constant_estimated = constant.estimated;
  rep.quotient = l.value > 0.0 ? r.value / l.value : kInf;
  rep.deficit = r.value - constant.value * l.value;
  rep.quad_error = r.error + constant.value * l.error;
  return rep;
}

SideReport evaluate(InequalityId id, const Trial& u, const InequalityParams& params, const FunctionalConfig& cfg) {
  return evaluate(id, u, params, sharp_constant(id, params, cfg), cfg);
}

double alvino_sup(const RadialProfile& u, int n, double R) {
  if (n < 2) throw DomainError("alvino_sup: n must be >= 2");
  if (!(R > 0.0)) throw DomainError("alvino_sup: R must be positive");
  const RadialProfile ustar = nonincreasing(u, R) ? u : schwarz_rearrange(u, n);
  const double e = (n - 1.0) / n;
  auto g = [&](double t) {
    const double v = std::abs(ustar(R * std::exp(-t)));
    return v == 0.0 ? 0.0 : v / std::pow(t, e);
  };
  // t = log(R/r), log-uniform.
  const double lt0 = std::log(1e-12), lt1 = std::log(700.0);
  constexpr int kGrid = 4096;
  double best = 0.0;
  int arg = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double v = g(std::exp(lt0 + (lt1 - lt0) * i / (kGrid - 1)));
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  for (double b : ustar.breakpoints()) {
    if (b > 0.0 && b < R) best = std::max(best, g(std::log(R / b)));
  }
  double lo = lt0 + (lt1 - lt0) * std::max(arg - 1, 0) / (kGrid - 1);
  double hi = lt0 + (lt1 - lt0) * std::min(arg + 1, kGrid - 1) / (kGrid - 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = g(std::exp(x1)), f2 = g(std::exp(x2));
  while (hi - lo > 1e-10) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = g(std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = g(std::exp(x2));
    }
  }
  return std::max({best, f1, f2});
}

ChainValues strict_chain(const RadialProfile& u, const InequalityParams& P, const FunctionalConfig& cfg) {
  if (!u.on_ball() || u.support_end() > P.R * (1.0 + 1e-12)) {
    throw DomainError("strict_chain needs a trial supported in B_R");
  }
  if (!nonincreasing(u, P.R)) throw DomainError("strict_chain: monotonicity violation");
  const InequalityParams sp = sobolev_params(P.n, P.p, P.R);
  const double S = sobolev_constant(P.n, P.p);
  ChainValues c;
  c.first = S * side_lhs(InequalityId::SobolevRn, u, sp, cfg);
  c.second = ball_constant(P.n, P.p) * side_lhs(InequalityId::BallSobolevRadial, u, sp, cfg);
  c.third = side_rhs(InequalityId::SobolevRn, u, sp, cfg);
  return c;
}

void TrialFamily::validate() const {
  if (!builder) throw DomainError("trial family without builder");
  const std::size_t d = lower.size();
  if (d == 0 || upper.size() != d || log_scale.size() != d) {
    throw DomainError("trial family bounds and encoding must have equal, nonzero size");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(lower[i] <= upper[i])) throw DomainError("trial family: lower bound above upper bound");
    if (log_scale[i] && !(lower[i] > 0.0)) throw DomainError("trial family: log-scaled bound must be positive");
  }
}

QuotientMinimum minimize_quotient(InequalityId id, const TrialFamily& family, const InequalityParams& params,
                                  std::span<const double> init, const NelderMeadOptions& opts,
                                  const FunctionalConfig& cfg) {
  family.validate();
  const std::size_t d = family.lower.size();
  if (init.size() != d) throw DomainError("minimize_quotient: init has the wrong dimension");
  auto encode = [&](std::size_t i, double v) { return family.log_scale[i] ? std::log(v) : v; };
  std::vector<double> lo(d), hi(d), x0(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!(family.lower[i] <= init[i] && init[i] <= family.upper[i])) {
      throw DomainError("minimize_quotient: init outside bounds");
    }
    lo[i] = encode(i, family.lower[i]);
    hi[i] = encode(i, family.upper[i]);
    x0[i] = encode(i, init[i]);
  }
  auto decode = [&](std::span<const double> x) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = family.log_scale[i] ? std::exp(x[i]) : x[i];
    return v;
  };
  auto objective = [&](std::span<const double> x) {
    try {
      const std::vector<double> v = decode(x);
      const Trial t = family.builder(v);
      const double l = side_lhs(id, t, params, cfg);
      const double r = side_rhs(id, t, params, cfg);
      if (!(l > 0.0)) return kInf;
      return r / l;
    } catch (const DomainError&) {
      return kInf;
    } catch (const ConvergenceError&) {
      return kInf;
    }
  };
  const NelderMeadResult nm = nelder_mead(objective, x0, lo, hi, opts);
  return {nm.value, decode(nm.x), nm.evaluations, nm.converged};
}

TrialFamily ball_extremal_family(int n, double p, double R) {
  TrialFamily f;
  f.builder = [n, p, R](std::span<const double> v) { return Trial(ball_extremal({v[0], v[1]}, n, p, R)); };
  f.lower = {1e-3, 1e-3};
  f.upper = {1e3, 1e3};
  f.log_scale = {true, true};
  f.name = "ball_extremal";
  return f;
}

RadialProfile hardy_truncated(int n, double p, double R, double beta, double delta) {
  if (!(p > 1.0 && p < n)) throw DomainError("hardy_truncated: p not in (1,n)");
  if (!(beta >= (p - 1.0) / p - 1e-15)) throw DomainError("hardy_truncated: beta below (p-1)/p");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("hardy_truncated: delta must lie in (0,1)");
  if (!(R > 0.0)) throw DomainError("hardy_truncated: R must be positive");
  const double k = (n - p) / (p - 1.0);
  const double slope = std::pow(delta, beta - 1.0);
  auto s_of = [k, R](double r) { return -std::expm1(k * std::log(r / R)); };
  auto value = [=](double r) {
    if (r >= R) return 0.0;
    const double s = s_of(r);
    return s >= delta ? std::pow(s, beta) : s * slope;
  };
  auto deriv = [=](double r) {
    if (r >= R) return 0.0;
    const double s = s_of(r);
    const double ds = -k * (1.0 - s) / r;
    return (s >= delta ? beta * std::pow(s, beta - 1.0) : slope) * ds;
  };
  const double r_delta = R * std::exp(std::log1p(-delta) / k);
  BoundaryChart chart;
  chart.kappa = k;
  chart.value = [=](double s) { return s >= delta ? std::pow(s, beta) : s * slope; };
  chart.derivative = [=](double r, double s) {
    return (s >= delta ? beta * std::pow(s, beta - 1.0) : slope) * (-k * (1.0 - s) / r);
  };
  return RadialProfile(value, deriv, R, {r_delta}, "hardy_truncated").with_boundary_chart(std::move(chart));
}

TrialFamily hardy_truncated_family(int n, double p, double R, double delta_min) {
  TrialFamily f;
  f.builder = [n, p, R](std::span<const double> v) { return Trial(hardy_truncated(n, p, R, v[0], v[1])); };
  f.lower = {(p - 1.0) / p, delta_min};
  f.upper = {(p - 1.0) / p + 1.0, 0.5};
  f.log_scale = {false, true};
  f.name = "hardy_truncated";
  return f;
}

RadialProfile concentration_trial(int n, double p, double R, double mu) {
  return truncate_to_ball(dilate(aubin_talenti({1.0, 1.0}, n, p), ScalingSpec(mu), n, p), R);
}

TrialFamily concentration_family(int n, double p, double R) {
  TrialFamily f;
  f.builder = [n, p, R](std::span<const double> v) { return Trial(concentration_trial(n, p, R, v[0])); };
  f.lower = {1e-2};
  f.upper = {1e4};
  f.log_scale = {true};
  f.name = "concentration";
  return f;
}

TrialFamily bliss_family(const InequalityParams& P) {
  const double floor_kg = (P.n - P.p) / P.p;
  TrialFamily f;
  f.builder = [floor_kg](std::span<const double> v) {
    const double g = v[0];
    const double kappa = (v[1] + floor_kg) / g;
    auto value = [g, kappa](double r) { return std::exp(-kappa * std::log1p(std::exp(g * std::log(r)))); };
    auto deriv = [g, kappa](double r) {
      const double lg = g * std::log(r);
      return -kappa * g * std::exp((g - 1.0) * std::log(r) - (kappa + 1.0) * std::log1p(std::exp(lg)));
    };
    return Trial(RadialProfile(value, deriv, RadialProfile::kWholeSpace, {}, "bliss"));
  };
  f.lower = {0.2, 1.0 / std::min(P.theta, P.sigma)};
  f.upper = {20.0, 50.0};
  f.log_scale = {true, true};
  f.name = "bliss";
  return f;
}

std::vector<double> bliss_init(const InequalityParams& P) {
  const TrialFamily f = bliss_family(P);
  std::vector<double> x{P.p / (P.p - 1.0), (P.n - P.p) / (P.p - 1.0) - (P.n - P.p) / P.p};
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], f.lower[i], f.upper[i]);
  return x;
}

} // namespace sharpineq
