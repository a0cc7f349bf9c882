#pragma once

// Reference computations written independently of the library.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// omega_{n-1} from std::tgamma.
inline double sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0); }

/// Talenti/Aubin form of the sharp Sobolev constant for 1 < p < n.
inline double sobolev_constant(int n, double p) {
  const double pi = std::numbers::pi;
  const double a = std::pow(pi, 0.5) * std::pow(n, 1.0 / p) * std::pow((n - p) / (p - 1.0), (p - 1.0) / p);
  const double g = std::tgamma(1.0 + n / 2.0) * std::tgamma(n) / (std::tgamma(n / p) * std::tgamma(1.0 + n - n / p));
  return a * std::pow(g, -1.0 / n);
}

/// Composite Simpson on [a, b] with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Central difference with step h.
inline double diff(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      d = -d;
    }
    d *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
    }
  }
  return d;
}

/// Largest r in (lo, hi) with f(r) > level for f nonincreasing, by bisection.
inline double level_radius(const std::function<double(double)>& f, double level, double lo, double hi) {
  if (f(lo) <= level) return lo;
  if (f(hi) > level) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace oracle
