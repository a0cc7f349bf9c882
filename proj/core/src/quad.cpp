#include "sharpineq/quad.hpp"

#include "sharpineq/errors.hpp"
#include "sharpineq/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace sharpineq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 400000;
// Panels touching a piece edge, where integrable power singularities may sit,
// are refined past max_depth down to this depth.
constexpr int kEdgeDepth = 1100;

// Kronrod 15-point abscissae (descending) and weights; the Gauss 7-point
// rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
  std::size_t serial; // tie-break for deterministic ordering
  bool at_a = false;  // shares its left end with a piece edge
  bool at_b = false;
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.serial > rhs.serial;
  }
};

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw ConvergenceError("non-finite integrand value at x = " + std::to_string(x), 0.0,
                           std::numeric_limits<double>::infinity());
  }
  return v;
}

// One G7/K15 panel with the QUADPACK error heuristic.
Panel gauss_kronrod(const Integrand& f, double a, double b, int depth, std::size_t serial) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f(center), center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double x1 = center - dx;
    const double x2 = center + dx;
    f1[j] = checked(f(x1), x1);
    f2[j] = checked(f(x2), x2);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double ah = std::abs(half);
  resk *= half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return Panel{a, b, resk, err, depth, serial};
}

bool splittable(const Panel& p, int max_depth) {
  if (p.depth >= ((p.at_a || p.at_b) ? kEdgeDepth : max_depth)) return false;
  const double scale = std::max(std::abs(p.a), std::abs(p.b));
  return (p.b - p.a) > 64.0 * kEps * scale;
}

QuadratureResult adaptive(const Integrand& f, std::span<const double> edges, const QuadratureConfig& cfg) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> open;
  std::vector<Panel> closed;
  std::size_t serial = 0;
  long evals = 0;
  double total = 0.0;
  double total_err = 0.0;

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    Panel p = gauss_kronrod(f, edges[i], edges[i + 1], 0, serial++);
    p.at_a = p.at_b = true;
    evals += 15;
    total += p.value;
    total_err += p.error;
    open.push(p);
  }

  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  double closed_err = 0.0;
  while (total_err > tolerance()) {
    if (open.empty()) break;
    Panel worst = open.top();
    open.pop();
    if (!splittable(worst, cfg.max_depth)) {
      closed.push_back(worst);
      closed_err += worst.error;
      if (closed_err > tolerance()) {
        throw ConvergenceError("quadrature did not converge within max_depth", total, total_err);
      }
      continue;
    }
    if (serial > kMaxPanels) {
      throw ConvergenceError("quadrature panel budget exhausted", total, total_err);
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid, worst.depth + 1, serial++);
    Panel right = gauss_kronrod(f, mid, worst.b, worst.depth + 1, serial++);
    left.at_a = worst.at_a;
    right.at_b = worst.at_b;
    evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }

  // Re-sum from the panels to shed the running-sum drift.
  double value = 0.0;
  double err = 0.0;
  for (const Panel& p : closed) {
    value += p.value;
    err += p.error;
  }
  while (!open.empty()) {
    value += open.top().value;
    err += open.top().error;
    open.pop();
  }
  if (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    throw ConvergenceError("quadrature did not converge within max_depth", value, err);
  }
  return QuadratureResult{value, err, evals};
}

std::vector<double> make_edges(double a, double b, std::span<const double> knots) {
  std::vector<double> edges{a};
  for (double k : knots) {
    if (k > a && k < b) edges.push_back(k);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Boundary coordinate s -> radius, r = R (1-s)^{1/kappa}.
double radius_from_boundary(double s, double R, double kappa) {
  return R * std::exp(std::log1p(-s) / kappa);
}

} // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (max_depth < 10) throw DomainError("quadrature max_depth must be at least 10");
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  return integrate_pieces(f, a, b, {}, cfg);
}

QuadratureResult integrate_pieces(const Integrand& f, double a, double b, std::span<const double> knots,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < b)) throw DomainError("integrate: need a < b");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: bounds must be finite");
  const auto edges = make_edges(a, b, knots);
  return adaptive(f, edges, cfg);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("integrate_semi_infinite: need finite a >= 0");
  auto mapped = [&f, a](double t) {
    const double u = 1.0 - t;
    const double x = a + t / u;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v / (u * u);
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

RadialDomain RadialDomain::ball(double R, double kappa, std::vector<double> breakpoints) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("ball radius must be positive and finite");
  if (!(kappa > 0.0)) throw DomainError("boundary exponent must be positive");
  RadialDomain d;
  d.R = R;
  d.kappa = kappa;
  d.breakpoints = std::move(breakpoints);
  return d;
}

RadialDomain RadialDomain::whole_space(std::vector<double> breakpoints) {
  RadialDomain d;
  d.breakpoints = std::move(breakpoints);
  return d;
}

double RadialDomain::boundary_coordinate(double r) const {
  if (!is_ball()) return 1.0;
  return -std::expm1(kappa * std::log(r / R));
}

QuadratureResult integrate_radius(const RadialIntegrand& g, const RadialDomain& domain,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  std::vector<double> knots = domain.breakpoints;
  std::sort(knots.begin(), knots.end());

  if (!domain.is_ball()) {
    auto plain = [&g](double r) { return g(RadialPoint{r, 1.0}); };
    const double last = knots.empty() ? 0.0 : std::max(0.0, knots.back());
    QuadratureResult out;
    if (last > 0.0) out += integrate_pieces(plain, 0.0, last, knots, cfg);
    out += integrate_semi_infinite(plain, last, cfg);
    return out;
  }

  const double R = domain.R;
  auto raw = [&g, &domain](double r) { return g(RadialPoint{r, domain.boundary_coordinate(r)}); };
  if (!cfg.boundary_substitution) return integrate_pieces(raw, 0.0, R, knots, cfg);

  // Inner part in r; outer part in the boundary coordinate.
  const double r_split = 0.5 * R;
  const double kappa = domain.kappa;
  const double s_split = domain.boundary_coordinate(r_split);
  QuadratureResult out = integrate_pieces(raw, 0.0, r_split, knots, cfg);

  // s = s_split e^{-w}, w = t/(1-t); ds = s dw; dr = -(R/kappa)(1-s)^{1/kappa-1} ds.
  auto outer = [&g, R, kappa, s_split](double t) {
    const double u = 1.0 - t;
    const double w = t / u;
    const double s = s_split * std::exp(-w);
    if (s == 0.0) return 0.0;
    const double r = radius_from_boundary(s, R, kappa);
    const double jac = (R / kappa) * std::exp((1.0 / kappa - 1.0) * std::log1p(-s)) * s / (u * u);
    const double v = g(RadialPoint{r, s});
    if (v == 0.0) return 0.0;
    return v * jac;
  };
  std::vector<double> tknots;
  for (double k : knots) {
    if (k > r_split && k < R) {
      const double s = domain.boundary_coordinate(k);
      if (s > 0.0) {
        const double w = std::log(s_split / s);
        tknots.push_back(w / (1.0 + w));
      }
    }
  }
  out += integrate_pieces(outer, 0.0, 1.0, tknots, cfg);
  return out;
}

QuadratureResult radial_integral(int n, const Integrand& g, const RadialDomain& domain,
                                 const QuadratureConfig& cfg) {
  return radial_integral(n, RadialIntegrand([&g](const RadialPoint& pt) { return g(pt.r); }), domain, cfg);
}

QuadratureResult radial_integral(int n, const RadialIntegrand& g, const RadialDomain& domain,
                                 const QuadratureConfig& cfg) {
  if (n < 1) throw DomainError("radial_integral: n must be >= 1");
  const double omega = sphere_area(n);
  auto weighted = [&g, n](const RadialPoint& pt) {
    const double v = g(pt);
    if (v == 0.0) return 0.0;
    return v * std::pow(pt.r, n - 1);
  };
  QuadratureResult res = integrate_radius(weighted, domain, cfg);
  res.value *= omega;
  res.error_estimate *= omega;
  return res;
}

QuadratureResult zonal_integral(int n, const ZonalIntegrand& G, const RadialDomain& domain,
                                const QuadratureConfig& cfg) {
  if (n < 2) throw DomainError("zonal_integral: n must be >= 2");
  long inner_evals = 0;
  double inner_rel_err = 0.0;
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.abs_tol = std::min(cfg.abs_tol, 1e-16);

  auto radial_part = [&](const RadialPoint& pt) {
    QuadratureResult inner;
    if (n == 2) {
      inner = integrate([&](double psi) { return G(pt, psi); }, 0.0, 2.0 * std::numbers::pi, inner_cfg);
    } else {
      const double expo = 0.5 * (n - 3);
      inner = integrate(
          [&](double t) {
            const double v = G(pt, t);
            if (v == 0.0 || expo == 0.0) return v;
            return v * std::pow((1.0 - t) * (1.0 + t), expo);
          },
          -1.0, 1.0, inner_cfg);
    }
    inner_evals += inner.evaluations;
    if (inner.value != 0.0) inner_rel_err = std::max(inner_rel_err, inner.error_estimate / std::abs(inner.value));
    if (inner.value == 0.0) return 0.0;
    return inner.value * std::pow(pt.r, n - 1);
  };
  QuadratureResult res = integrate_radius(radial_part, domain, cfg);
  const double omega = (n == 2) ? 1.0 : sphere_area(n - 1);
  res.value *= omega;
  res.error_estimate = omega * res.error_estimate + inner_rel_err * std::abs(res.value);
  res.evaluations += inner_evals;
  return res;
}

} // namespace sharpineq
