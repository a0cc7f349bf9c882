#include <doctest.h>

#include "oracles.hpp"
#include "sharpineq/errors.hpp"
#include "sharpineq/profiles.hpp"
#include "sharpineq/quad.hpp"
#include "sharpineq/special.hpp"

#include <cmath>
#include <numbers>

using namespace sharpineq;

namespace {

double ball_volume(int n, double r) { return oracle::sphere_area(n) / n * std::pow(r, n); }

// Two bumps with disjoint supports, peaks 1 and 0.6.
RadialProfile two_bumps() {
  const RadialProfile a = bump(1.0, 0.2, 0.15);
  const RadialProfile b = bump(1.0, 0.65, 0.25);
  return RadialProfile([a, b](double r) { return a(r) + 0.6 * b(r); },
                       [a, b](double r) { return a.derivative(r) + 0.6 * b.derivative(r); }, 1.0,
                       {0.05, 0.2, 0.35, 0.4, 0.65, 0.9}, "two-bumps");
}

// Gradient L^p norm of a radial profile via Simpson on its pieces.
double grad_norm_p(const RadialProfile& f, int n, double p, std::vector<double> cuts) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += oracle::simpson(
        [&](double r) {
          if (r <= 0.0 || r >= 1.0) return 0.0;
          return std::pow(std::abs(f.derivative(r)), p) * std::pow(r, n - 1);
        },
        cuts[i], cuts[i + 1], 4000);
  }
  return oracle::sphere_area(n) * total;
}

} // namespace

TEST_SUITE("profiles") {
  TEST_CASE("analytic derivatives agree with finite differences") {
    const std::vector<RadialProfile> corpus{aubin_talenti({1.0, 1.0}, 3, 2.0), aubin_talenti({2.0, 0.5}, 5, 2.5),
                                            ball_extremal({1.0, 1.0}, 3, 2.0, 1.0),
                                            ball_extremal({0.7, 2.0}, 4, 1.6, 2.0), moser(3, 1.0, 0.4),
                                            bump(1.0, 0.5, 0.3), gaussian(1.3)};
    for (const auto& f : corpus) {
      for (double r : {0.11, 0.29, 0.47, 0.63, 0.77}) {
        bool near_break = false;
        for (double b : f.breakpoints()) near_break |= std::abs(r - b) < 1e-3;
        if (near_break || r >= f.support_end()) continue;
        const double fd = oracle::diff([&](double x) { return f(x); }, r);
        CHECK(std::abs(f.derivative(r) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        CHECK(std::abs(f.without_derivative().derivative(r) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }

  TEST_CASE("Aubin-Talenti values") {
    const RadialProfile u = aubin_talenti({1.0, 1.0}, 3, 2.0);
    CHECK(u(0.0) == doctest::Approx(1.0));
    CHECK(u(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(!u.on_ball());
    CHECK_THROWS_AS(aubin_talenti({0.0, 1.0}, 3, 2.0), DomainError);
  }

  TEST_CASE("ball extremal vanishes on the boundary") {
    const RadialProfile v = ball_extremal({1.0, 1.0}, 3, 2.0, 1.5);
    CHECK(v.support_end() == 1.5);
    CHECK(v(1.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(v(1.6) == 0.0);
    CHECK(v(0.5) > v(1.0));
  }

  TEST_CASE("Moser function") {
    const RadialProfile m = moser(2, 1.0, 0.5);
    const double L = std::log(2.0);
    CHECK(m(0.2) == doctest::Approx(std::pow(L, 0.5)));
    CHECK(m(0.75) == doctest::Approx(std::log(1.0 / 0.75) / std::pow(L, 0.5)));
    CHECK(m(1.0) == doctest::Approx(0.0));
    for (int n : {2, 3, 4}) CHECK(oracle::rel_err(moser_gradient_norm(n), std::pow(oracle::sphere_area(n), 1.0 / n)) < 1e-12);
    CHECK_THROWS_AS(moser(3, 1.0, 1.5), DomainError);
  }

  TEST_CASE("bump support") {
    const RadialProfile b = bump(1.0, 0.5, 0.3);
    CHECK(b(0.5) == doctest::Approx(1.0));
    CHECK(b(0.15) == 0.0);
    CHECK(b(0.85) == 0.0);
    CHECK_THROWS_AS(bump(1.0, 0.8, 0.3), DomainError);
  }

  TEST_CASE("rearrangement is equimeasurable") {
    const std::vector<std::pair<int, RadialProfile>> corpus{
        {3, bump(1.0, 0.5, 0.3)}, {3, two_bumps()}, {2, two_bumps()}, {4, bump(1.0, 0.0, 0.7)}};
    for (const auto& [n, f] : corpus) {
      const RadialProfile fs = schwarz_rearrange(f, n);
      for (double lambda : {0.05, 0.2, 0.45, 0.7, 0.95}) {
        const double mu = distribution_function(f, n, lambda);
        // Independent level-set measure from bisection on each monotone piece of f*.
        const double rs = oracle::level_radius([&](double r) { return fs(r); }, lambda, 0.0, 1.0);
        CHECK(std::abs(mu - ball_volume(n, rs)) < 1e-7);
        CHECK(std::abs(distribution_function(fs, n, lambda) - mu) < 1e-7);
      }
      CHECK(profile_sup(fs) == doctest::Approx(profile_sup(f)).epsilon(1e-9));
    }
  }

  TEST_CASE("distribution of a single bump by hand") {
    // bump(1, 0.5, 0.3) > lambda on the shell |z| < z0, e exp(-1/(1 - z0^2)) = lambda.
    const RadialProfile f = bump(1.0, 0.5, 0.3);
    const double lambda = 0.5;
    const double z0 = std::sqrt(1.0 - 1.0 / (1.0 + std::log(1.0 / lambda)));
    const double expect = ball_volume(3, 0.5 + 0.3 * z0) - ball_volume(3, 0.5 - 0.3 * z0);
    CHECK(oracle::rel_err(distribution_function(f, 3, lambda), expect) < 1e-8);
  }

  TEST_CASE("rearrangement is nonincreasing") {
    const RadialProfile fs = schwarz_rearrange(two_bumps(), 3);
    double prev = fs(1e-6);
    for (double r = 0.01; r < 1.0; r += 0.01) {
      const double v = fs(r);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }

  TEST_CASE("Polya-Szego on the corpus") {
    const int n = 3;
    for (double p : {1.5, 2.0, 3.0}) {
      const RadialProfile f = bump(1.0, 0.5, 0.3);
      const RadialProfile fs = schwarz_rearrange(f, n);
      const double a = grad_norm_p(f, n, p, {0.0, 0.2, 0.5, 0.8, 1.0});
      const double b = grad_norm_p(fs, n, p, {0.0, 0.5, 1.0});
      CHECK(b <= a * (1.0 + 1e-6));
      const RadialProfile g = two_bumps();
      const RadialProfile gs = schwarz_rearrange(g, n);
      CHECK(grad_norm_p(gs, n, p, {0.0, 0.25, 0.5, 0.75, 1.0}) <=
            grad_norm_p(g, n, p, {0.0, 0.05, 0.2, 0.35, 0.4, 0.65, 0.9, 1.0}) * (1.0 + 1e-6));
    }
    // Already radially decreasing: the rearrangement is the identity.
    const RadialProfile m = moser(3, 1.0, 0.3);
    const RadialProfile ms = schwarz_rearrange(m, 3);
    for (double r : {0.1, 0.4, 0.8}) {
      CHECK(ms(r) == doctest::Approx(m(r)).epsilon(1e-8));
      CHECK(ms.derivative(r) == doctest::Approx(m.derivative(r)).epsilon(1e-6));
    }
  }

  TEST_CASE("non-monotone piece is rejected") {
    const RadialProfile f([](double r) { return std::sin(12.0 * r) * (1.0 - r); }, std::nullopt, 1.0);
    CHECK_THROWS_AS(distribution_function(f, 3, 0.1), DomainError);
  }

  TEST_CASE("truncation to a ball") {
    const RadialProfile g = truncate_to_ball(gaussian(), 2.0);
    CHECK(g.support_end() == 2.0);
    CHECK(g(2.0) == doctest::Approx(0.0));
    CHECK(g(0.0) == doctest::Approx(1.0 - std::exp(-4.0)));
  }
}
