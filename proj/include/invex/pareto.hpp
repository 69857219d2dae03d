#ifndef INVEX_PARETO_HPP_
#define INVEX_PARETO_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invex/piecewise.hpp"
#include "invex/polytope.hpp"
#include "invex/simplex.hpp"

namespace invex {

enum class DominanceMode { Pareto, Weak };

// a dominates b: componentwise <= with one strict (Pareto mode), or strictly
// < in every component (weak mode).
inline bool dominates(const std::vector<double>& a, const std::vector<double>& b,
                      DominanceMode mode) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: length mismatch");
  if (mode == DominanceMode::Weak) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i] < b[i])) return false;
    return true;
  }
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

struct WeightVector {
  std::vector<double> lambda;

  explicit WeightVector(std::vector<double> l) : lambda(std::move(l)) {
    double sum = 0.0;
    for (double v : lambda) {
      if (v < 0.0) throw std::invalid_argument("WeightVector: negative weight");
      sum += v;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("WeightVector: all-zero weights");
  }

  bool strictly_positive() const {
    for (double v : lambda)
      if (!(v > 0.0)) return false;
    return true;
  }
};

// A finite multiobjective minimization instance: p objectives over the
// feasible grid points of a boxed axis.
struct VMP {
  std::vector<PiecewiseFn> objectives;
  std::vector<PiecewiseFn> constraints_ineq;
  std::vector<PiecewiseFn> constraints_eq;
  std::vector<double> grid;  // sorted axis grid
  double feas_tol = 1e-9;

  bool feasible(double x) const {
    for (const auto& g : constraints_ineq)
      if (g.value(x) > feas_tol) return false;
    for (const auto& h : constraints_eq)
      if (std::fabs(h.value(x)) > feas_tol) return false;
    return true;
  }

  std::vector<double> feasible_points() const {
    std::vector<double> out;
    for (double x : grid)
      if (feasible(x)) out.push_back(x);
    return out;
  }

  std::vector<double> values(double x) const {
    std::vector<double> v(objectives.size());
    for (std::size_t i = 0; i < objectives.size(); ++i) v[i] = objectives[i].value(x);
    return v;
  }
};

struct FrontResult {
  std::vector<double> points;
  bool empty_feasible = false;
};

// Brute-force nondominated filtering over the feasible grid.
inline FrontResult pareto_front(const VMP& p, DominanceMode mode) {
  FrontResult out;
  auto feas = p.feasible_points();
  if (feas.empty()) {
    out.empty_feasible = true;
    return out;
  }
  std::vector<std::vector<double>> vals;
  vals.reserve(feas.size());
  for (double x : feas) vals.push_back(p.values(x));
  for (std::size_t i = 0; i < feas.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < feas.size() && !dominated; ++j)
      if (j != i && dominates(vals[j], vals[i], mode)) dominated = true;
    if (!dominated) out.points.push_back(feas[i]);
  }
  return out;
}

struct ArgminResult {
  std::vector<double> points;
  double value = 0.0;
};

// All grid minimizers of the weighted sum over the feasible grid; ties are
// all returned (within an absolute 1e-12 band so exact ties survive fp noise).
inline ArgminResult weighted_argmin(const VMP& p, const WeightVector& w) {
  if (w.lambda.size() != p.objectives.size())
    throw std::invalid_argument("weighted_argmin: weight count mismatch");
  auto feas = p.feasible_points();
  if (feas.empty()) throw ModelError("weighted_argmin: empty feasible set");
  ArgminResult res;
  res.value = std::numeric_limits<double>::infinity();
  std::vector<double> sums;
  sums.reserve(feas.size());
  for (double x : feas) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.objectives.size(); ++i)
      s += w.lambda[i] * p.objectives[i].value(x);
    sums.push_back(s);
    res.value = std::min(res.value, s);
  }
  for (std::size_t i = 0; i < feas.size(); ++i)
    if (sums[i] <= res.value + 1e-12) res.points.push_back(feas[i]);
  return res;
}

struct GeoffrionReport {
  bool efficient = false;  // membership in the Pareto front
  bool passed = false;     // all trade-off ratios within the bound
  double worst_ratio = 0.0;
  double witness_x = 0.0;
  std::size_t witness_i = 0;  // 1-based improving objective at the witness
  std::string note;
};

// Audit the bounded trade-off condition at u against every grid point: any
// improvement in one objective must be paid for by some other objective at a
// ratio of at most M.
inline GeoffrionReport geoffrion_audit(const VMP& p, double u, double M) {
  GeoffrionReport rep;
  auto front = pareto_front(p, DominanceMode::Pareto);
  bool in_front = false;
  for (double x : front.points)
    if (x == u) in_front = true;
  if (!in_front) {
    rep.note = "u is not Pareto optimal on the grid";
    return rep;
  }
  rep.efficient = true;
  rep.passed = true;
  auto fu = p.values(u);
  for (double x : p.feasible_points()) {
    auto fx = p.values(x);
    for (std::size_t i = 0; i < fu.size(); ++i) {
      if (!(fx[i] < fu[i])) continue;
      double gain = fu[i] - fx[i];
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < fu.size(); ++j) {
        if (j == i || !(fx[j] > fu[j])) continue;
        best_ratio = std::min(best_ratio, gain / (fx[j] - fu[j]));
      }
      rep.worst_ratio = std::max(rep.worst_ratio, best_ratio);
      if (best_ratio > M + 1e-9 && rep.passed) {
        rep.passed = false;
        rep.witness_x = x;
        rep.witness_i = i + 1;
      }
    }
  }
  return rep;
}

// Trade-off bound realized by a strictly positive scalarization weight.
inline double geoffrion_bound(const WeightVector& w) {
  if (!w.strictly_positive())
    throw std::invalid_argument("geoffrion_bound: weights must be positive");
  double ratio = 0.0;
  for (double a : w.lambda)
    for (double b : w.lambda) ratio = std::max(ratio, a / b);
  return (static_cast<double>(w.lambda.size()) - 1.0) * ratio;
}

struct StationarityCertificate {
  std::vector<double> tau;                // >= 0, sums to 1
  std::vector<std::vector<double>> xi;    // selected subgradients (tau_i > 0)
};

// Find tau >= 0 (not all zero) and generators xi_i with sum tau_i xi_i = 0,
// as a linear feasibility over cone weights normalized by sum tau = 1.
inline std::optional<StationarityCertificate> stationarity_weights(
    const std::vector<Polytope>& subdiffs, double tol = 1e-9) {
  if (subdiffs.empty())
    throw std::invalid_argument("stationarity_weights: no polytopes");
  std::size_t n = subdiffs.front().dimension();
  for (const auto& p : subdiffs) {
    if (p.dimension() != n)
      throw std::invalid_argument("stationarity_weights: dimension mismatch");
    if (p.generators().empty())
      throw std::invalid_argument("stationarity_weights: empty generator set");
  }
  std::vector<std::size_t> offset;
  std::size_t cols = 0;
  for (const auto& p : subdiffs) {
    offset.push_back(cols);
    cols += p.generators().size();
  }
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  {
    std::vector<double> row(cols, 1.0);
    a.push_back(row);
    b.push_back(1.0);
  }
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t i = 0; i < subdiffs.size(); ++i) {
      const auto& gens = subdiffs[i].generators();
      for (std::size_t k = 0; k < gens.size(); ++k)
        row[offset[i] + k] = gens[k][d];
    }
    a.push_back(row);
    b.push_back(0.0);
  }
  auto res = SimplexSolver(std::move(a), std::move(b),
                           std::vector<double>(cols, 0.0))
                 .solve(tol);
  if (!res.feasible) return std::nullopt;
  StationarityCertificate cert;
  cert.tau.assign(subdiffs.size(), 0.0);
  cert.xi.assign(subdiffs.size(), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < subdiffs.size(); ++i) {
    const auto& gens = subdiffs[i].generators();
    std::vector<double> mix(n, 0.0);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      double wk = res.x[offset[i] + k];
      cert.tau[i] += wk;
      for (std::size_t d = 0; d < n; ++d) mix[d] += wk * gens[k][d];
    }
    if (cert.tau[i] > tol)
      for (std::size_t d = 0; d < n; ++d) cert.xi[i][d] = mix[d] / cert.tau[i];
  }
  return cert;
}

}  // namespace invex

#endif  // INVEX_PARETO_HPP_
