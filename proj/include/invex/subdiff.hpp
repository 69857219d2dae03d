#ifndef INVEX_SUBDIFF_HPP_
#define INVEX_SUBDIFF_HPP_

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "invex/piecewise.hpp"
#include "invex/polytope.hpp"
#include "invex/simplex.hpp"

namespace invex {

// Exact Clarke subdifferential of a piecewise-C^1 univariate function: the
// singleton derivative at smooth points, the hull of the one-sided derivative
// limits at declared breakpoints.
inline Polytope clarke_subdiff_1d(const PiecewiseFn& f, double x) {
  if (!f.in_domain(x))
    throw ModelError("clarke_subdiff_1d: point outside function domain");
  const Interval& dom = f.domain();
  bool at_lo = std::fabs(x - dom.lo) <= PiecewiseFn::kSnap;
  bool at_hi = std::fabs(x - dom.hi) <= PiecewiseFn::kSnap;
  if (at_lo) return Polytope::singleton(f.derivative(x, +1));
  if (at_hi) return Polytope::singleton(f.derivative(x, -1));
  if (f.is_breakpoint(x)) {
    double dl = f.derivative(x, -1);
    double dr = f.derivative(x, +1);
    return Polytope::from_interval(std::min(dl, dr), std::max(dl, dr));
  }
  return Polytope::singleton(f.derivative(x, 0));
}

// Membership of the origin in the hull, within tol. 1-D is closed form; the
// general case is a linear feasibility over convex weights.
inline bool contains_zero(const Polytope& p, double tol = 1e-9) {
  if (p.dimension() == 1) {
    Interval iv = p.interval();
    return iv.lo - tol <= 0.0 && 0.0 <= iv.hi + tol;
  }
  const auto& gens = p.generators();
  std::size_t n = p.dimension(), m = gens.size();
  // Variables: convex weights w, residual split r+ / r-.
  std::size_t cols = m + 2 * n;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c(cols, 0.0);
  {
    std::vector<double> row(cols, 0.0);
    for (std::size_t k = 0; k < m; ++k) row[k] = 1.0;
    a.push_back(row);
    b.push_back(1.0);
  }
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t k = 0; k < m; ++k) row[k] = gens[k][d];
    row[m + 2 * d] = 1.0;
    row[m + 2 * d + 1] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
    c[m + 2 * d] = 1.0;
    c[m + 2 * d + 1] = 1.0;
  }
  auto res = SimplexSolver(std::move(a), std::move(b), std::move(c)).solve();
  return res.feasible && res.objective <= tol;
}

// Signed margin of 0 relative to a 1-D hull: 0 inside, else distance out.
inline double zero_margin(const Polytope& p) {
  return p.interval().distance(0.0);
}

struct GradientEstimate {
  // Hull of sampled finite-difference gradients per shrinking radius.
  std::vector<std::pair<double, Interval>> per_radius;
  Polytope hull;  // estimate from the smallest radius
};

// Sampled limiting-gradient estimate for a locally Lipschitz scalar function.
// Finite-difference gradients at points around x (never at x itself); the
// returned hull comes from the tightest radius. A cross-check oracle, not an
// exact computation.
inline GradientEstimate estimate_limiting_gradients(
    const std::function<double(double)>& f, double x,
    const std::vector<double>& radii, int samples) {
  if (samples < 2)
    throw std::invalid_argument("estimate_limiting_gradients: samples < 2");
  if (radii.empty())
    throw std::invalid_argument("estimate_limiting_gradients: empty radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0.0 || (i > 0 && radii[i] >= radii[i - 1]))
      throw std::invalid_argument(
          "estimate_limiting_gradients: radii must be positive decreasing");
  }
  GradientEstimate est;
  int half = samples / 2;
  for (double r : radii) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 1; k <= half; ++k) {
      for (int sgn : {-1, +1}) {
        double y = x + sgn * r * static_cast<double>(k) / half;
        double h = std::min(r * 1e-3, std::fabs(y - x) * 0.25);
        volatile double yp = y + h, ym = y - h;
        double grad = (f(yp) - f(ym)) / (yp - ym);
        lo = std::min(lo, grad);
        hi = std::max(hi, grad);
      }
    }
    est.per_radius.emplace_back(r, Interval{lo, hi});
  }
  est.hull = Polytope::from_interval(est.per_radius.back().second);
  return est;
}

// n-dimensional variant: per-coordinate central differences at sample points
// on shrinking spheres; the sampled gradients are returned as hull generators.
inline Polytope estimate_limiting_gradients_nd(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, const std::vector<double>& radii,
    int samples) {
  if (samples < 2)
    throw std::invalid_argument("estimate_limiting_gradients_nd: samples < 2");
  std::size_t n = x.size();
  std::vector<std::vector<double>> gens;
  std::uint64_t state = 0x9e3779b97f4a7c15ull;  // fixed-seed LCG directions
  auto next_unit = [&state, n]() {
    std::vector<double> d(n);
    double norm = 0.0;
    for (auto& v : d) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      v = static_cast<double>((state >> 11) % 2000001) / 1000000.0 - 1.0;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) d[0] = norm = 1.0;
    for (auto& v : d) v /= norm;
    return d;
  };
  for (double r : radii) {
    for (int s = 0; s < samples; ++s) {
      auto dir = next_unit();
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + r * dir[i];
      std::vector<double> grad(n);
      double h = r * 1e-3;
      for (std::size_t i = 0; i < n; ++i) {
        auto yp = y, ym = y;
        yp[i] += h;
        ym[i] -= h;
        grad[i] = (f(yp) - f(ym)) / (2 * h);
      }
      gens.push_back(std::move(grad));
    }
  }
  return Polytope(std::move(gens));
}

}  // namespace invex

#endif  // INVEX_SUBDIFF_HPP_
