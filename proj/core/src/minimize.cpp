#include "sharpineq/minimize.hpp"

#include "sharpineq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sharpineq {

namespace {

struct Budget {
  int used = 0;
  int limit = 0;
  bool exhausted() const { return used >= limit; }
};

class Simplex {
public:
  Simplex(const std::function<double(std::span<const double>)>& f, std::span<const double> lower,
          std::span<const double> upper, Budget& budget)
      : f_(f), lower_(lower), upper_(upper), budget_(budget) {}

  // One run from x0; returns whether it stopped on its own criteria.
  bool run(const std::vector<double>& x0, double step, const NelderMeadOptions& opts) {
    const std::size_t dim = x0.size();
    pts_.assign(dim + 1, x0);
    vals_.assign(dim + 1, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      double s = step;
      if (pts_[i + 1][i] + s > upper_[i]) s = -s;
      pts_[i + 1][i] += s;
      clamp(pts_[i + 1]);
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (budget_.exhausted()) return false;
      vals_[i] = eval(pts_[i]);
    }

    while (true) {
      order();
      if (diameter() < opts.x_tol) return true;
      const double spread = vals_.back() - vals_.front();
      if (std::isfinite(spread) && spread <= opts.f_tol * std::max(std::abs(vals_.front()), 1e-300)) return true;
      if (budget_.exhausted()) return false;

      const std::vector<double> c = centroid();
      const std::vector<double> xr = affine(c, pts_.back(), -1.0);
      const double fr = eval(xr);
      if (fr < vals_.front()) {
        if (budget_.exhausted()) { replace_worst(xr, fr); return false; }
        const std::vector<double> xe = affine(c, pts_.back(), -2.0);
        const double fe = eval(xe);
        if (fe < fr) replace_worst(xe, fe); else replace_worst(xr, fr);
        continue;
      }
      if (fr < vals_[vals_.size() - 2]) {
        replace_worst(xr, fr);
        continue;
      }
      if (budget_.exhausted()) return false;
      const bool outside = fr < vals_.back();
      const std::vector<double> xc = outside ? affine(c, pts_.back(), -0.5) : affine(c, pts_.back(), 0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, vals_.back())) {
        replace_worst(xc, fc);
        continue;
      }
      // Shrink toward the best vertex.
      for (std::size_t i = 1; i < pts_.size(); ++i) {
        if (budget_.exhausted()) return false;
        pts_[i] = affine(pts_[0], pts_[i], 0.5);
        vals_[i] = eval(pts_[i]);
      }
    }
  }

  const std::vector<double>& best() const { return pts_.front(); }
  double best_value() const { return vals_.front(); }
  void order() {
    std::vector<std::size_t> idx(pts_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) { return vals_[a] < vals_[b]; });
    std::vector<std::vector<double>> p;
    std::vector<double> v;
    for (std::size_t i : idx) {
      p.push_back(pts_[i]);
      v.push_back(vals_[i]);
    }
    pts_.swap(p);
    vals_.swap(v);
  }

private:
  double eval(const std::vector<double>& x) {
    ++budget_.used;
    const double v = f_(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }

  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower_[i], upper_[i]);
  }

  std::vector<double> centroid() const {
    std::vector<double> c(pts_.front().size(), 0.0);
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += pts_[i][j];
    }
    for (double& v : c) v /= static_cast<double>(pts_.size() - 1);
    return c;
  }

  // c + t (x - c), clamped to the box.
  std::vector<double> affine(const std::vector<double>& c, const std::vector<double>& x, double t) const {
    std::vector<double> out(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] + t * (x[j] - c[j]);
    clamp(out);
    return out;
  }

  void replace_worst(const std::vector<double>& x, double v) {
    pts_.back() = x;
    vals_.back() = v;
  }

  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < pts_[i].size(); ++j) {
        const double e = pts_[i][j] - pts_[0][j];
        s += e * e;
      }
      d = std::max(d, std::sqrt(s));
    }
    return d;
  }

  const std::function<double(std::span<const double>)>& f_;
  std::span<const double> lower_;
  std::span<const double> upper_;
  Budget& budget_;
  std::vector<std::vector<double>> pts_;
  std::vector<double> vals_;
};

} // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             std::span<const double> lower, std::span<const double> upper,
                             const NelderMeadOptions& opts) {
  if (x0.empty()) throw DomainError("nelder_mead: empty start point");
  if (lower.size() != x0.size() || upper.size() != x0.size()) {
    throw DomainError("nelder_mead: bounds must match the dimension");
  }
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (!(lower[i] <= x0[i] && x0[i] <= upper[i])) throw DomainError("nelder_mead: start point outside bounds");
  }

  Budget budget{0, opts.max_evaluations};
  Simplex simplex(f, lower, upper, budget);
  NelderMeadResult out;
  bool finished = simplex.run(x0, opts.initial_step, opts);
  simplex.order();
  out.x = simplex.best();
  out.value = simplex.best_value();

  while (finished && out.restarts < opts.max_restarts && !budget.exhausted()) {
    ++out.restarts;
    finished = simplex.run(out.x, opts.initial_step, opts);
    simplex.order();
    const double improvement = out.value - simplex.best_value();
    if (simplex.best_value() < out.value) {
      out.x = simplex.best();
      out.value = simplex.best_value();
    }
    if (!(improvement > 1e-12 * std::max(std::abs(out.value), 1e-300))) break;
  }
  out.evaluations = budget.used;
  out.converged = finished;
  return out;
}

} // namespace sharpineq
