#ifndef INVEX_KKT_HPP_
#define INVEX_KKT_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invex/piecewise.hpp"
#include "invex/polytope.hpp"
#include "invex/simplex.hpp"

namespace invex {

// Multipliers of the stationarity inclusion
//   0 in l1*P_L + l2*P_R + sum_j mu_j*P_{g_j} + sum_k theta_k*P_{h_k}.
struct MultiplierSet {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::vector<double> mu;     // one per included inequality polytope, >= 0
  std::vector<double> theta;  // one per equality polytope, sign-free
  bool lambda_on_bound = false;  // solver hit the strict-positivity surrogate
};

struct KKTReport {
  bool feasible = false;
  double residual = std::numeric_limits<double>::infinity();
  MultiplierSet multipliers;
  // Selected subgradients at the reported multipliers: [L, R, g..., h...].
  std::vector<std::vector<double>> selected;
};

// Indices of active inequality constraints at u: J(u) = { j : |g_j(u)| <= tol }.
// Throws when u is infeasible, naming the violating constraint.
inline std::vector<std::size_t> active_set(const std::vector<PiecewiseFn>& g,
                                           double u, double tol = 1e-9) {
  std::vector<std::size_t> J;
  for (std::size_t j = 0; j < g.size(); ++j) {
    double v = g[j].value(u);
    if (v > tol)
      throw ModelError("active_set: point infeasible, g_" + std::to_string(j + 1) +
                       "(u) = " + std::to_string(v) + " > 0");
    if (std::fabs(v) <= tol) J.push_back(j);
  }
  return J;
}

namespace detail_kkt {

struct Block {
  const Polytope* poly;
  std::size_t offset;      // first column of this block's weights
  bool split_sign;         // equality multipliers get a +/- cone pair
};

inline void check_gens(const Polytope& p, const char* what) {
  if (p.generators().empty())
    throw std::invalid_argument(std::string("kkt: empty generator set for ") + what);
}

}  // namespace detail_kkt

// Verify the stationarity inclusion for fixed multipliers as a linear
// feasibility over convex weights per polytope. The residual is the minimal
// L1 distance of 0 to the weighted Minkowski sum.
inline KKTReport kkt_verify(const Polytope& PL, const Polytope& PR,
                            const std::vector<Polytope>& ineq,
                            const std::vector<Polytope>& eq,
                            const MultiplierSet& m, double tol = 1e-9) {
  if (!(m.lambda1 > 0.0) || !(m.lambda2 > 0.0))
    throw std::invalid_argument("kkt_verify: lambda must be strictly positive");
  if (m.mu.size() != ineq.size())
    throw std::invalid_argument("kkt_verify: mu count mismatch");
  if (m.theta.size() != eq.size())
    throw std::invalid_argument("kkt_verify: theta count mismatch");
  for (double v : m.mu)
    if (v < 0.0) throw std::invalid_argument("kkt_verify: negative mu (sign violation)");

  std::size_t n = PL.dimension();
  std::vector<const Polytope*> polys{&PL, &PR};
  std::vector<double> coeff{m.lambda1, m.lambda2};
  for (std::size_t j = 0; j < ineq.size(); ++j) {
    polys.push_back(&ineq[j]);
    coeff.push_back(m.mu[j]);
  }
  for (std::size_t k = 0; k < eq.size(); ++k) {
    polys.push_back(&eq[k]);
    coeff.push_back(m.theta[k]);
  }
  std::vector<std::size_t> offset;
  std::size_t cols = 0;
  for (const auto* p : polys) {
    detail_kkt::check_gens(*p, "kkt_verify");
    if (p->dimension() != n)
      throw std::invalid_argument("kkt_verify: polytope dimension mismatch");
    offset.push_back(cols);
    cols += p->generators().size();
  }
  std::size_t rbase = cols;
  cols += 2 * n;

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c(cols, 0.0);
  for (std::size_t p = 0; p < polys.size(); ++p) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t k = 0; k < polys[p]->generators().size(); ++k)
      row[offset[p] + k] = 1.0;
    a.push_back(row);
    b.push_back(1.0);
  }
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t p = 0; p < polys.size(); ++p) {
      const auto& gens = polys[p]->generators();
      for (std::size_t k = 0; k < gens.size(); ++k)
        row[offset[p] + k] = coeff[p] * gens[k][d];
    }
    row[rbase + 2 * d] = 1.0;
    row[rbase + 2 * d + 1] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
    c[rbase + 2 * d] = 1.0;
    c[rbase + 2 * d + 1] = 1.0;
  }
  auto res = SimplexSolver(std::move(a), std::move(b), std::move(c)).solve(tol);
  KKTReport rep;
  rep.multipliers = m;
  if (!res.feasible) return rep;  // convexity rows unsatisfiable cannot happen
  rep.residual = std::max(0.0, res.objective);
  rep.feasible = rep.residual <= tol;
  for (std::size_t p = 0; p < polys.size(); ++p) {
    const auto& gens = polys[p]->generators();
    std::vector<double> mix(n, 0.0);
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t d = 0; d < n; ++d) mix[d] += res.x[offset[p] + k] * gens[k][d];
    rep.selected.push_back(std::move(mix));
  }
  return rep;
}

enum class LambdaMode { Fixed, Normalized };

inline constexpr double kLambdaMin = 1e-6;

// Search for multipliers making the stationarity inclusion hold. The search
// is linear: mu_j times a convex combination of generators is replaced by an
// unrestricted nonnegative cone combination (mu_j recovered as total mass),
// and equality multipliers split into +/- cones. Lambda is either fixed or
// normalized to l1 + l2 = 1 with l_i >= 1e-6.
inline KKTReport kkt_solve(const Polytope& PL, const Polytope& PR,
                           const std::vector<Polytope>& ineq,
                           const std::vector<Polytope>& eq, LambdaMode mode,
                           double fixed_l1 = 0.0, double fixed_l2 = 0.0,
                           double tol = 1e-9) {
  std::size_t n = PL.dimension();
  detail_kkt::check_gens(PL, "objective left endpoint");
  detail_kkt::check_gens(PR, "objective right endpoint");
  for (const auto& p : ineq) detail_kkt::check_gens(p, "inequality constraint");
  for (const auto& p : eq) detail_kkt::check_gens(p, "equality constraint");
  if (mode == LambdaMode::Fixed && (!(fixed_l1 > 0.0) || !(fixed_l2 > 0.0)))
    throw std::invalid_argument("kkt_solve: fixed lambda must be positive");

  std::size_t nL = PL.generators().size(), nR = PR.generators().size();
  std::size_t cols = nL + nR;
  std::vector<std::size_t> ineq_off, eq_off;
  for (const auto& p : ineq) {
    ineq_off.push_back(cols);
    cols += p.generators().size();
  }
  for (const auto& p : eq) {
    eq_off.push_back(cols);
    cols += 2 * p.generators().size();  // split into + and - cones
  }
  std::size_t s1 = 0, s2 = 0;
  if (mode == LambdaMode::Normalized) {
    s1 = cols++;
    s2 = cols++;
  }
  std::size_t rbase = cols;
  cols += 2 * n;

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c(cols, 0.0);
  auto mass_row = [&](std::size_t begin, std::size_t count) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t k = 0; k < count; ++k) row[begin + k] = 1.0;
    return row;
  };
  if (mode == LambdaMode::Fixed) {
    a.push_back(mass_row(0, nL));
    b.push_back(fixed_l1);
    a.push_back(mass_row(nL, nR));
    b.push_back(fixed_l2);
  } else {
    auto row = mass_row(0, nL + nR);
    a.push_back(row);
    b.push_back(1.0);
    auto rowL = mass_row(0, nL);
    rowL[s1] = -1.0;
    a.push_back(rowL);
    b.push_back(kLambdaMin);
    auto rowR = mass_row(nL, nR);
    rowR[s2] = -1.0;
    a.push_back(rowR);
    b.push_back(kLambdaMin);
  }
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t k = 0; k < nL; ++k) row[k] = PL.generators()[k][d];
    for (std::size_t k = 0; k < nR; ++k) row[nL + k] = PR.generators()[k][d];
    for (std::size_t j = 0; j < ineq.size(); ++j) {
      const auto& gens = ineq[j].generators();
      for (std::size_t k = 0; k < gens.size(); ++k)
        row[ineq_off[j] + k] = gens[k][d];
    }
    for (std::size_t k = 0; k < eq.size(); ++k) {
      const auto& gens = eq[k].generators();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        row[eq_off[k] + 2 * g] = gens[g][d];
        row[eq_off[k] + 2 * g + 1] = -gens[g][d];
      }
    }
    row[rbase + 2 * d] = 1.0;
    row[rbase + 2 * d + 1] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
    c[rbase + 2 * d] = 1.0;
    c[rbase + 2 * d + 1] = 1.0;
  }
  auto res = SimplexSolver(std::move(a), std::move(b), std::move(c)).solve(tol);
  KKTReport rep;
  if (!res.feasible) return rep;
  rep.residual = std::max(0.0, res.objective);
  rep.feasible = rep.residual <= tol;
  if (!rep.feasible) return rep;

  auto mass_of = [&](std::size_t begin, std::size_t count) {
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += res.x[begin + k];
    return s;
  };
  rep.multipliers.lambda1 = mass_of(0, nL);
  rep.multipliers.lambda2 = mass_of(nL, nR);
  rep.multipliers.lambda_on_bound =
      mode == LambdaMode::Normalized &&
      (rep.multipliers.lambda1 <= kLambdaMin + 1e-9 ||
       rep.multipliers.lambda2 <= kLambdaMin + 1e-9);
  auto mix_of = [&](const Polytope& p, std::size_t begin, bool split,
                    double& mass_out) {
    const auto& gens = p.generators();
    std::vector<double> mix(n, 0.0);
    double mass = 0.0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      double w = split ? res.x[begin + 2 * k] - res.x[begin + 2 * k + 1]
                       : res.x[begin + k];
      mass += w;
      for (std::size_t d = 0; d < n; ++d) mix[d] += w * gens[k][d];
    }
    mass_out = mass;
    if (std::fabs(mass) > tol)
      for (auto& v : mix) v /= mass;
    return mix;
  };
  double mass;
  rep.selected.push_back(mix_of(PL, 0, false, mass));
  rep.selected.push_back(mix_of(PR, nL, false, mass));
  for (std::size_t j = 0; j < ineq.size(); ++j) {
    rep.selected.push_back(mix_of(ineq[j], ineq_off[j], false, mass));
    rep.multipliers.mu.push_back(mass);
  }
  for (std::size_t k = 0; k < eq.size(); ++k) {
    if (n == 1) {
      // Renormalize so the selected point lies in the polytope: the signed
      // cone split can return a mass-weighted mix outside conv(P) even though
      // the contribution itself is representable as theta * conv(P) in 1-D.
      const auto& gens = eq[k].generators();
      double v = 0.0;
      for (std::size_t g = 0; g < gens.size(); ++g)
        v += (res.x[eq_off[k] + 2 * g] - res.x[eq_off[k] + 2 * g + 1]) * gens[g][0];
      Interval iv = eq[k].interval();
      double theta = 0.0, xi = iv.mid();
      if (std::fabs(v) > tol) {
        if (v > 0 ? iv.hi > 0 : iv.hi < 0) {
          theta = v / iv.hi;
          xi = iv.hi;
        } else {
          theta = v / iv.lo;
          xi = iv.lo;
        }
      }
      rep.selected.push_back({xi});
      rep.multipliers.theta.push_back(theta);
    } else {
      rep.selected.push_back(mix_of(eq[k], eq_off[k], true, mass));
      rep.multipliers.theta.push_back(mass);
    }
  }
  return rep;
}

}  // namespace invex

#endif  // INVEX_KKT_HPP_
