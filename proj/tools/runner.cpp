#include "runner.hpp"

#include "sharpineq/errors.hpp"
#include "sharpineq/functionals.hpp"
#include "sharpineq/geometry.hpp"
#include "sharpineq/special.hpp"
#include "sharpineq/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace sharpineq::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double default_tol(const std::string& sub) {
  if (sub == "jacobian") return 1e-9;
  if (sub == "hardy" || sub == "chain") return 1e-8;
  if (sub == "limit") return 0.05;
  return 1e-6;
}

bool homogeneous_id(InequalityId id) {
  return id == InequalityId::CknRnHomog || id == InequalityId::BallCknHomog || id == InequalityId::HardyBall;
}

InequalityId id_or(const ExperimentConfig& c, InequalityId fallback) {
  if (c.ineq.empty()) return fallback;
  const auto id = parse_inequality_id(c.ineq);
  if (!id) throw DomainError("unknown inequality '" + c.ineq + "'");
  return *id;
}

InequalityParams params_for(const ExperimentConfig& c, InequalityId id) {
  if (id == InequalityId::Alvino || id == InequalityId::HardyCritical) return critical_params(c.n, c.R);
  if (!(c.p > 1.0 && c.p < c.n)) throw DomainError("p not in (1,n)");
  const double theta = c.theta.value_or(c.p);
  const double sigma = c.sigma.value_or(homogeneous_id(id) ? theta : c.n * c.p / (c.n - c.p));
  return make_params(c.n, c.p, theta, sigma, c.R);
}

Row base_row(const std::string& label, const InequalityParams& P, double lambda) {
  Row r;
  r.inequality = label;
  r.n = P.n;
  r.p = P.p;
  r.theta = P.theta;
  r.sigma = P.sigma;
  r.R = P.R;
  r.lambda = lambda;
  return r;
}

Row report_row(const std::string& label, const InequalityParams& P, double lambda, const SideReport& s) {
  Row r = base_row(label, P, lambda);
  r.lhs = s.lhs;
  r.rhs = s.rhs;
  r.constant = s.constant;
  r.quotient = s.quotient;
  r.deficit = s.deficit;
  r.quad_error = s.quad_error;
  return r;
}

// Row comparing two values that should agree: quotient rhs/lhs, deficit rhs - lhs.
Row identity_row(const std::string& label, const InequalityParams& P, double lambda, double lhs, double rhs,
                 double tol, double err = 0.0) {
  Row r = base_row(label, P, lambda);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = 1.0;
  r.quotient = rhs / lhs;
  r.deficit = rhs - lhs;
  r.quad_error = err;
  r.pass = std::abs(rhs - lhs) <= tol * std::max(std::abs(lhs), std::abs(rhs));
  return r;
}

AngularFactor tilt(int n) {
  AngularFactor h;
  if (n == 2) {
    h.value = [](double psi) { return 1.0 + 0.3 * std::cos(psi); };
    h.derivative = [](double psi) { return -0.3 * std::sin(psi); };
  } else {
    h.value = [](double t) { return 1.0 + 0.3 * t; };
    h.derivative = [](double) { return 0.3; };
  }
  return h;
}

void run_constants(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityParams P = params_for(c, InequalityId::CknRn);
  auto add = [&](InequalityId id, const InequalityParams& Q) {
    Row r = base_row(std::string(to_string(id)), Q, kNaN);
    r.lhs = r.rhs = r.quotient = r.deficit = kNaN;
    r.constant = sharp_constant(id, Q, fc).value;
    r.pass = std::isfinite(r.constant) && r.constant > 0.0;
    rep.rows.push_back(r);
  };
  const InequalityParams S = sobolev_params(c.n, c.p, c.R);
  const InequalityParams H = hardy_params(c.n, c.p, c.R);
  const InequalityParams Hom = make_params(c.n, c.p, P.theta, P.theta, c.R);
  add(InequalityId::SobolevRn, S);
  add(InequalityId::BallSobolevRadial, S);
  add(InequalityId::BallCkn, S);
  add(InequalityId::CknRnHomog, Hom);
  add(InequalityId::HardyBall, H);
  add(InequalityId::HardyCritical, critical_params(c.n, c.R));
  add(InequalityId::Alvino, critical_params(c.n, c.R));
}

void run_attain(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  for (double R : c.radii) {
    const InequalityParams P = sobolev_params(c.n, c.p, R);
    const SideReport s = evaluate(InequalityId::BallSobolevRadial, ball_extremal({c.a, c.b}, c.n, c.p, R), P, fc);
    Row r = report_row("ball-sobolev-radial", P, kNaN, s);
    r.pass = std::abs(s.quotient / s.constant - 1.0) <= rep.tol;
    rep.rows.push_back(r);
  }
  for (double R : c.radii) {
    const InequalityParams P = critical_params(c.n, R);
    for (double rho : c.rhos) {
      const SideReport s = evaluate(InequalityId::Alvino, moser(c.n, R, rho * R), P, fc);
      Row r = report_row("alvino", P, rho, s);
      r.pass = std::abs(s.deficit) <= rep.tol * s.rhs;
      rep.rows.push_back(r);
    }
  }
}

void run_invariance(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityId id = id_or(c, InequalityId::BallCkn);
  InequalityParams P;
  switch (id) {
  case InequalityId::BallCkn:
  case InequalityId::BallCknHomog: P = params_for(c, id); break;
  case InequalityId::BallSobolevRadial:
  case InequalityId::BallSobolevGeneral: P = sobolev_params(c.n, c.p, c.R); break;
  case InequalityId::HardyBall: P = hardy_params(c.n, c.p, c.R); break;
  default: throw DomainError("invariance is defined for ball-ckn, ball-ckn-homog, ball-sobolev-*, hardy-ball");
  }
  const bool zonal = id == InequalityId::BallCkn || id == InequalityId::BallSobolevGeneral;
  const RadialProfile f = bump(c.R, 0.0, 0.8 * c.R);
  const ZonalFunction z{f, tilt(c.n)};
  const SharpConstant k = sharp_constant(id, P, fc);
  const SideReport base = zonal ? evaluate(id, z, P, k, fc) : evaluate(id, f, P, k, fc);
  Row r0 = report_row(std::string(to_string(id)), P, 1.0, base);
  r0.pass = true;
  rep.rows.push_back(r0);
  for (double lam : c.lambdas) {
    const ScalingSpec s(lam);
    const SideReport sr = zonal ? evaluate(id, scale_ball(z, s, P), P, k, fc) : evaluate(id, scale_ball(f, s, P), P, k, fc);
    Row r = report_row(std::string(to_string(id)), P, lam, sr);
    const double drift = std::max(std::abs(sr.lhs - base.lhs) / base.lhs, std::abs(sr.rhs - base.rhs) / base.rhs);
    r.pass = drift <= rep.tol;
    rep.rows.push_back(r);
  }
}

void run_equiv(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityParams P = params_for(c, InequalityId::CknRn);
  const InequalityParams Ph = make_params(P.n, P.p, P.theta, P.theta, P.R);
  const std::vector<std::pair<std::string, RadialProfile>> corpus{
      {"aubin-talenti-1-1", aubin_talenti({1.0, 1.0}, P.n, P.p)},
      {"aubin-talenti-2-0.5", aubin_talenti({2.0, 0.5}, P.n, P.p)},
      {"gaussian", gaussian(1.0)},
  };
  auto add = [&](const std::string& name, const Trial& v, const Trial& u, bool radial) {
    const SideValue l1 = side_lhs_value(InequalityId::CknRn, v, P, fc);
    const SideValue l2 = side_lhs_value(InequalityId::BallCkn, u, P, fc);
    const double sg = P.sigma;
    rep.rows.push_back(identity_row("equiv-norm:" + name, P, kNaN, std::pow(l1.value, sg), std::pow(l2.value, sg),
                                    rep.tol, sg * (l1.error + l2.error)));
    const SideValue g1 = side_rhs_value(InequalityId::CknRn, v, P, fc);
    const SideValue g2 = side_rhs_value(InequalityId::BallCkn, u, P, fc);
    const double th = P.theta;
    rep.rows.push_back(identity_row("equiv-gradient:" + name, P, kNaN, std::pow(g1.value, th),
                                    std::pow(g2.value, th), rep.tol, th * (g1.error + g2.error)));
    if (!radial) return;
    const SideValue h1 = side_rhs_value(InequalityId::CknRnHomog, v, Ph, fc);
    const SideValue h2 = side_rhs_value(InequalityId::BallCknHomog, u, Ph, fc);
    rep.rows.push_back(identity_row("equiv-radial-gradient:" + name, P, kNaN, std::pow(h1.value, th),
                                    std::pow(h2.value, th), rep.tol, th * (h1.error + h2.error)));
  };
  for (const auto& [name, v] : corpus) add(name, v, to_ball(v, P), true);
  const ZonalFunction vz{gaussian(1.0), tilt(P.n)};
  add("gaussian-zonal", vz, to_ball(vz, P), false);
}

void run_jacobian(const ExperimentConfig& c, Report& rep) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const double alpha = 0.75;
  const double q = 1.0 + 1.0 / alpha;
  const double R = c.R;
  RadialMap m;
  m.phi = [=](double rho) { return ball_radius(rho, alpha, QIndex(q), R); };
  m.phi_prime = [=](double rho) {
    const double w = std::pow(rho / R, -1.0 / alpha);
    return ball_radius(rho, alpha, QIndex(q), R) * w / (rho * (1.0 + w));
  };
  for (int n : c.dims) {
    if (n < 2) throw DomainError("jacobian: dimensions must be >= 2");
    const InequalityParams P = critical_params(n, R);
    const ZonalFunction u{gaussian(1.0), tilt(n)};
    for (int i = 0; i < c.points; ++i) {
      Eigen::VectorXd y(n);
      do {
        for (int j = 0; j < n; ++j) y(j) = coord(rng);
      } while (y.norm() < 1e-3);
      const Eigen::MatrixXd J = jacobian_matrix(m, y);
      const double det_lu = Eigen::PartialPivLU<Eigen::MatrixXd>(J).determinant();
      Row rd = identity_row("jacobian-det", P, kNaN, jacobian_det(m, y), det_lu, rep.tol);
      rd.p = rd.theta = rd.sigma = kNaN;
      rep.rows.push_back(rd);

      const Eigen::VectorXd x = map_point(m, y);
      const double rx = x.norm();
      const double angle = (n == 2) ? std::atan2(x(1), x(0)) : x(n - 1) / rx;
      const GradientSplit split = gradient_split(u, n, rx, angle);
      const double explicit_sq = (J * gradient_vector(u, x)).squaredNorm();
      Row rp = identity_row("jacobian-pushforward", P, kNaN, pushforward_gradient_sq(m, split, y), explicit_sq,
                            rep.tol);
      rp.p = rp.theta = rp.sigma = kNaN;
      rep.rows.push_back(rp);
    }
  }

  const InequalityParams P = params_for(c, InequalityId::BallCkn);
  std::uniform_real_distribution<double> radius(0.01 * R, R);
  constexpr int kPerLambda = 10;
  for (double lam : c.lambdas) {
    for (int i = 0; i < kPerLambda; ++i) {
      const IdentitySides d = ode_sides(ScalingSpec(lam), P, radius(rng));
      rep.rows.push_back(identity_row("ode", P, lam, d.lhs, d.rhs, rep.tol));
    }
  }
  const RadialProfile v = aubin_talenti({1.0, 1.0}, P.n, P.p);
  const std::vector<std::pair<double, double>> pairs{{P.alpha, P.q}, {0.5, 1.5}, {2.0, 3.0}};
  for (const auto& [a, qq] : pairs) {
    for (double lam : c.lambdas) {
      for (int i = 0; i < kPerLambda; ++i) {
        double r = radius(rng);
        if (r >= R) r = 0.5 * R;
        const IdentitySides d = intertwine_sides(v, ScalingSpec(lam), a, QIndex(qq), R, r);
        rep.rows.push_back(identity_row("intertwine", P, lam, d.lhs, d.rhs, rep.tol));
      }
    }
  }
}

void run_limit(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const int n = c.n;
  const double alv = alvino_constant(n);
  const RadialProfile u = bump(c.R, 0.0, 0.9 * c.R);
  const double alv_side = alv * side_lhs(InequalityId::Alvino, u, critical_params(n, c.R), fc);
  double gap0 = kNaN, prev = kNaN;
  for (std::size_t i = 0; i < c.ps.size(); ++i) {
    const InequalityParams P = sobolev_params(n, c.ps[i], c.R);
    const double bc = ball_constant(n, c.ps[i]);
    Row r = base_row("ball-sobolev-radial", P, c.ps[i]);
    r.lhs = bc;
    r.rhs = alv;
    r.constant = kNaN;
    r.quotient = alv / bc;
    r.deficit = std::abs(bc - alv);
    r.pass = std::isfinite(r.deficit) && (i == 0 || r.deficit < prev);
    if (i == 0) gap0 = r.deficit;
    if (i + 1 == c.ps.size() && c.ps.size() > 1) r.pass = r.pass && r.deficit <= rep.tol * gap0;
    prev = r.deficit;
    rep.rows.push_back(r);
  }
  prev = kNaN;
  for (std::size_t i = 0; i < c.ps.size(); ++i) {
    const InequalityParams P = sobolev_params(n, c.ps[i], c.R);
    const SideValue l = side_lhs_value(InequalityId::BallSobolevRadial, u, P, fc);
    const double bc = ball_constant(n, c.ps[i]);
    Row r = base_row("limit-functional", P, c.ps[i]);
    r.lhs = bc * l.value;
    r.rhs = alv_side;
    r.constant = kNaN;
    r.quotient = r.rhs / r.lhs;
    r.deficit = std::abs(r.lhs - r.rhs);
    r.quad_error = bc * l.error;
    r.pass = std::isfinite(r.deficit) && (i == 0 || r.deficit < prev);
    prev = r.deficit;
    rep.rows.push_back(r);
  }
}

Row hardy_minimum(const InequalityParams& H, double tol, const FunctionalConfig& fc) {
  const TrialFamily fam = hardy_truncated_family(H.n, H.p, H.R);
  const std::vector<double> init{(H.p - 1.0) / H.p + 0.05, 1e-6};
  const QuotientMinimum m = minimize_quotient(InequalityId::HardyBall, fam, H, init, {}, fc);
  const SideReport s = evaluate(InequalityId::HardyBall, hardy_truncated(H.n, H.p, H.R, m.argmin[0], m.argmin[1]), H, fc);
  Row r = report_row("hardy-ball:min", H, m.argmin[1], s);
  r.pass = m.quotient >= s.constant - tol && m.quotient <= 1.1 * s.constant;
  return r;
}

void run_hardy(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityParams H = hardy_params(c.n, c.p, c.R);
  const double R = c.R;
  const double beta0 = (c.p - 1.0) / c.p;
  std::vector<std::pair<double, RadialProfile>> trials;
  trials.emplace_back(kNaN, bump(R, 0.0, 0.5 * R));
  trials.emplace_back(kNaN, bump(R, 0.5 * R, 0.3 * R));
  trials.emplace_back(kNaN, bump(R, 0.0, 0.95 * R));
  for (double d : {1e-2, 1e-6, 1e-10}) trials.emplace_back(d, hardy_truncated(c.n, c.p, R, beta0, d));
  trials.emplace_back(1e-3, hardy_truncated(c.n, c.p, R, 1.0, 1e-3));
  const SharpConstant k = sharp_constant(InequalityId::HardyBall, H, fc);
  for (const auto& [d, u] : trials) {
    Row r = report_row("hardy-ball", H, d, evaluate(InequalityId::HardyBall, u, H, k, fc));
    r.pass = r.quotient >= r.constant - rep.tol;
    rep.rows.push_back(r);
  }
  rep.rows.push_back(hardy_minimum(H, rep.tol, rep.fc));

  const InequalityParams Pc = critical_params(c.n, R);
  for (double center : {0.3, 0.5, 0.7}) {
    Row r = report_row("hardy-critical", Pc, center,
                       evaluate(InequalityId::HardyCritical, bump(R, center * R, 0.25 * R), Pc, fc));
    r.pass = r.quotient >= r.constant - rep.tol;
    rep.rows.push_back(r);
  }
}

void concentration_rows(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityParams P = sobolev_params(c.n, c.p, c.R);
  double prev = std::numeric_limits<double>::infinity();
  for (double mu : c.mus) {
    Row r = report_row("sobolev-rn", P, mu, evaluate(InequalityId::SobolevRn, concentration_trial(c.n, c.p, c.R, mu), P, fc));
    r.pass = r.quotient > r.constant && r.quotient < prev;
    prev = r.quotient;
    rep.rows.push_back(r);
  }
}

void run_optimize(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityId id = id_or(c, InequalityId::BallSobolevRadial);
  switch (id) {
  case InequalityId::BallSobolevRadial: {
    const InequalityParams P = sobolev_params(c.n, c.p, c.R);
    const std::vector<double> init{c.a, c.b};
    const QuotientMinimum m = minimize_quotient(id, ball_extremal_family(c.n, c.p, c.R), P, init, {}, fc);
    const SideReport s = evaluate(id, ball_extremal({m.argmin[0], m.argmin[1]}, c.n, c.p, c.R), P, fc);
    Row r = report_row("ball-sobolev-radial:min", P, kNaN, s);
    r.quotient = m.quotient;
    r.pass = std::abs(m.quotient / s.constant - 1.0) <= rep.tol;
    rep.rows.push_back(r);
    break;
  }
  case InequalityId::SobolevRn: {
    concentration_rows(c, rep);
    const InequalityParams P = sobolev_params(c.n, c.p, c.R);
    const std::vector<double> init{c.mus.front()};
    const QuotientMinimum m = minimize_quotient(id, concentration_family(c.n, c.p, c.R), P, init, {}, fc);
    const SideReport s = evaluate(id, concentration_trial(c.n, c.p, c.R, m.argmin[0]), P, fc);
    Row r = report_row("sobolev-rn:min", P, m.argmin[0], s);
    r.quotient = m.quotient;
    r.pass = m.quotient > s.constant;
    rep.rows.push_back(r);
    break;
  }
  case InequalityId::HardyBall: rep.rows.push_back(hardy_minimum(hardy_params(c.n, c.p, c.R), rep.tol, rep.fc)); break;
  case InequalityId::CknRn: {
    const InequalityParams P = params_for(c, id);
    const TrialFamily fam = bliss_family(P);
    const QuotientMinimum m = minimize_quotient(id, fam, P, bliss_init(P), {}, fc);
    const SideReport s = evaluate(id, fam.builder(m.argmin), P, SharpConstant{m.quotient, true}, fc);
    Row r = report_row("ckn-rn:min", P, kNaN, s);
    r.quotient = m.quotient;
    if (P.sobolev_exponents()) {
      r.constant = sobolev_constant(c.n, c.p);
      r.pass = std::abs(m.quotient / r.constant - 1.0) <= rep.tol;
    } else if (P.homogeneous()) {
      r.constant = (c.n - c.p) / c.p;
      r.pass = m.quotient >= r.constant * (1.0 - rep.tol);
    } else {
      r.pass = m.converged;
    }
    r.deficit = r.rhs - r.constant * r.lhs;
    rep.rows.push_back(r);
    break;
  }
  default: throw DomainError("optimize supports ball-sobolev-radial, sobolev-rn, hardy-ball and ckn-rn");
  }
}

void run_chain(const ExperimentConfig& c, Report& rep) {
  const FunctionalConfig& fc = rep.fc;
  const InequalityParams P = sobolev_params(c.n, c.p, c.R);
  auto chain_row = [&](const std::string& label, double lambda, const ChainValues& v) {
    Row r = base_row(label, P, lambda);
    r.lhs = v.first;
    r.constant = v.second;
    r.rhs = v.third;
    r.quotient = v.third / v.first;
    r.deficit = v.third - v.second;
    return r;
  };
  for (double w : {0.3, 0.5, 0.7, 0.85, 0.95}) {
    const ChainValues v = strict_chain(bump(c.R, 0.0, w * c.R), P, fc);
    Row r = chain_row("chain", w, v);
    r.pass = v.second - v.first > rep.tol && v.third - v.second > rep.tol;
    rep.rows.push_back(r);
  }
  const ChainValues e = strict_chain(ball_extremal({c.a, c.b}, c.n, c.p, c.R), P, fc);
  Row r = chain_row("chain:ball-extremal", kNaN, e);
  r.pass = e.second - e.first > rep.tol && std::abs(e.third - e.second) <= 1e-6 * e.third;
  rep.rows.push_back(r);
  concentration_rows(c, rep);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::ordered_json experiment_json(const ExperimentConfig& c, double tol) {
  nlohmann::ordered_json e;
  e["subcommand"] = c.subcommand;
  e["ineq"] = c.ineq;
  e["n"] = c.n;
  e["p"] = c.p;
  e["theta"] = c.theta ? num(*c.theta) : nullptr;
  e["sigma"] = c.sigma ? num(*c.sigma) : nullptr;
  e["R"] = c.R;
  e["a"] = c.a;
  e["b"] = c.b;
  e["lambdas"] = c.lambdas;
  e["ps"] = c.ps;
  e["radii"] = c.radii;
  e["rhos"] = c.rhos;
  e["mus"] = c.mus;
  e["dims"] = c.dims;
  e["points"] = c.points;
  e["tol"] = tol;
  e["quad_tol"] = c.quad_tol ? num(*c.quad_tol) : nullptr;
  e["seed"] = c.seed;
  return e;
}

} // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> subs{"constants", "attain", "invariance", "equiv", "jacobian",
                                             "limit",     "hardy",  "optimize",   "chain"};
  return subs;
}

void ExperimentConfig::validate() const {
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), subcommand) == subs.end()) {
    throw DomainError("unknown subcommand '" + subcommand + "'");
  }
  if (lambdas.empty() || ps.empty() || radii.empty() || rhos.empty() || mus.empty() || dims.empty()) {
    throw DomainError("grids must be non-empty");
  }
  if (tol && !(*tol > 0.0)) throw DomainError("tolerance must be positive");
  if (quad_tol && !(*quad_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (points < 1) throw DomainError("points must be >= 1");
  for (double l : lambdas) {
    if (!(l > 0.0)) throw DomainError("lambda values must be positive");
  }
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("R values must be positive");
  }
  for (double rho : rhos) {
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho values must lie in (0,1) as fractions of R");
  }
  for (double mu : mus) {
    if (!(mu > 0.0)) throw DomainError("mu values must be positive");
  }
}

int Report::passed() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.pass; }));
}

int Report::failed() const { return static_cast<int>(rows.size()) - passed(); }

Report run(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.config = config;
  rep.tol = config.tol.value_or(default_tol(config.subcommand));
  if (config.quad_tol) rep.fc.quad.rel_tol = *config.quad_tol;
  const std::string& s = config.subcommand;
  try {
    if (s == "constants") run_constants(config, rep);
    else if (s == "attain") run_attain(config, rep);
    else if (s == "invariance") run_invariance(config, rep);
    else if (s == "equiv") run_equiv(config, rep);
    else if (s == "jacobian") run_jacobian(config, rep);
    else if (s == "limit") run_limit(config, rep);
    else if (s == "hardy") run_hardy(config, rep);
    else if (s == "optimize") run_optimize(config, rep);
    else if (s == "chain") run_chain(config, rep);
  } catch (const ConvergenceError& e) {
    rep.complete = false;
    rep.message = e.what();
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

int exit_code(const Report& report) { return (report.complete && report.failed() == 0) ? 0 : 1; }

std::string to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = experiment_json(report.config, report.tol);
  j["rows"] = nlohmann::ordered_json::array();
  for (const Row& r : report.rows) {
    nlohmann::ordered_json o;
    o["inequality"] = r.inequality;
    o["n"] = r.n;
    o["p"] = num(r.p);
    o["theta"] = num(r.theta);
    o["sigma"] = num(r.sigma);
    o["R"] = num(r.R);
    o["lambda"] = num(r.lambda);
    o["lhs"] = num(r.lhs);
    o["rhs"] = num(r.rhs);
    o["constant"] = num(r.constant);
    o["quotient"] = num(r.quotient);
    o["deficit"] = num(r.deficit);
    o["quad_error"] = num(r.quad_error);
    o["pass"] = r.pass;
    j["rows"].push_back(std::move(o));
  }
  j["summary"] = {{"pass", report.passed()}, {"fail", report.failed()}, {"complete", report.complete},
                  {"message", report.message}};
  j["wall_time_s"] = report.wall_time_s;
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "inequality,n,p,theta,sigma,R,lambda,lhs,rhs,constant,quotient,deficit,quad_error,pass\n";
  for (const Row& r : report.rows) {
    auto f = [](double v) { return std::isfinite(v) ? fmt(v) : std::string(); };
    os << r.inequality << ',' << r.n << ',' << f(r.p) << ',' << f(r.theta) << ',' << f(r.sigma) << ',' << f(r.R)
       << ',' << f(r.lambda) << ',' << f(r.lhs) << ',' << f(r.rhs) << ',' << f(r.constant) << ','
       << f(r.quotient) << ',' << f(r.deficit) << ',' << f(r.quad_error) << ',' << (r.pass ? "true" : "false")
       << '\n';
  }
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of sharp Sobolev, Hardy and CKN inequalities on balls", "sharpineq"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::string format = "json";
  double theta = 0.0, sigma = 0.0, tol = 0.0, quad_tol = 0.0;

  for (const std::string& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--ineq", cfg.ineq, "inequality id");
    sub->add_option("--n", cfg.n, "dimension");
    sub->add_option("--p", cfg.p, "exponent p");
    sub->add_option("--theta", theta, "exponent theta (default p)");
    sub->add_option("--sigma", sigma, "exponent sigma (default p*)");
    sub->add_option("--R", cfg.R, "ball radius");
    sub->add_option("--a", cfg.a, "extremal parameter a");
    sub->add_option("--b", cfg.b, "extremal parameter b");
    sub->add_option("--lambdas", cfg.lambdas, "scaling grid")->delimiter(',');
    sub->add_option("--ps", cfg.ps, "p grid")->delimiter(',');
    sub->add_option("--radii", cfg.radii, "R grid")->delimiter(',');
    sub->add_option("--rhos", cfg.rhos, "Moser radii as fractions of R")->delimiter(',');
    sub->add_option("--mus", cfg.mus, "concentration grid")->delimiter(',');
    sub->add_option("--dims", cfg.dims, "dimensions for the Jacobian checks")->delimiter(',');
    sub->add_option("--points", cfg.points, "random points per dimension");
    sub->add_option("--tol", tol, "tolerance override");
    sub->add_option("--quad-tol", quad_tol, "relative quadrature tolerance");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    cfg.subcommand = sub->get_name();
    if (sub->count("--theta")) cfg.theta = theta;
    if (sub->count("--sigma")) cfg.sigma = sigma;
    if (sub->count("--tol")) cfg.tol = tol;
    if (sub->count("--quad-tol")) cfg.quad_tol = quad_tol;
  }
  cfg.format = format == "csv" ? Format::Csv : Format::Json;

  Report rep;
  try {
    rep = run(cfg);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string text = cfg.format == Format::Csv ? to_csv(rep) : to_json(rep);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.out << '\n';
      return 2;
    }
    f << text;
  }
  if (!rep.complete) err << "non-convergence: " << rep.message << '\n';
  return exit_code(rep);
}

} // namespace sharpineq::cli
