#ifndef INVEX_FIXTURES_HPP_
#define INVEX_FIXTURES_HPP_

#include <string>
#include <vector>

#include "invex/problem_file.hpp"

namespace invex::fixtures {

// Fuzzy program with a trapezoidal coefficient, log-abs shape and one smooth
// quadratic constraint; the candidate point u = 0 sits on the shape's kink.
inline constexpr const char* kExample1Fop =
    R"(# Fuzzy objective with a kink at the candidate point; smooth constraint.
fuzzy two = knots[(0,0), (1,0.75), (2,1), (3,0.75), (4,0)]
fuzzy one = knots[(0,0), (1,1), (2,0)]
fn s(x) = ln(x^2 + abs(x) + 1) + 1 on [-5, 10]
fn g(x) = x^2 - 5*x on [-5, 10]
objective = two * s - one
constraint g <= 0
domain = [0, 5]
xgrid = 0:5:0.01
alphagrid = 0:1:0.05
eta(x,u) = ln(x^2 + abs(x) + 1) - ln(u^2 + abs(u) + 1)
lambda = 0.25, 0.75
# mu enters the stationarity sum additively; grad g(0) = {-5}, so mu = 2/5
# cancels against the objective term at every level.
mu = 0.4
point = 0
rule = invex-all
)";

// Same objective, two active constraints at u = 0, one of them kinked. The
// constraint pair is certified jointly with nonconstant scalings.
inline constexpr const char* kExample2Fop =
    R"(# Two active constraints at the candidate point, one with a kink.
fuzzy two = knots[(0,0), (1,0.75), (2,1), (3,0.75), (4,0)]
fn s(x) = ln(x^2 + abs(x) + 1) + 1 on [-5, 5]
fn g1(x) = x^2 + x on [-5, 5]
fn g2(x) = piecewise{ [-5, 0]: -3*x^2; [0, 5]: x } on [-5, 5]
objective = two * s - 1
constraint g1 <= 0
constraint g2 <= 0
domain = [-1, 0]
xgrid = -1:0:0.005
alphagrid = 0:1:0.05
eta(x,u) = -x^2 - 1 + u
beta_g = x^2 + 1; u^2 + 1
lambda = 0.25, 0.75
mu = 1, 1
point = 0
rule = v-pseudo-all
)";

// Same objective with a flat-then-kinked constraint whose subdifferential at
// the candidate point is the interval [-1, 0].
inline constexpr const char* kExample3Fop =
    R"(# Piecewise-flat constraint; subdifferential at 0 spans [-1, 0].
fuzzy two = knots[(0,0), (1,0.75), (2,1), (3,0.75), (4,0)]
fn s(x) = ln(x^2 + abs(x) + 1) + 1 on [-5, 5]
fn g(x) = piecewise{ [-5, -1]: x + 1; [-1, 0]: 0; [0, 1]: -x; [1, 5]: x - 2 } on [-5, 5]
objective = two * s - 1
constraint g <= 0
domain = [-2, 2]
xgrid = -2:2:0.01
alphagrid = 0:1:0.05
eta(x,u) = ln(x^2 + abs(x) + 1) - ln(u^2 + abs(u) + 1)
lambda = 0.25, 0.75
mu = 1
point = 0
rule = v-invex-quasi
)";

inline ProblemFile example1() { return parse_problem_text(kExample1Fop, "ex1"); }
inline ProblemFile example2() { return parse_problem_text(kExample2Fop, "ex2"); }
inline ProblemFile example3() { return parse_problem_text(kExample3Fop, "ex3"); }

inline const char* example_text(const std::string& id) {
  if (id == "ex1") return kExample1Fop;
  if (id == "ex2") return kExample2Fop;
  if (id == "ex3") return kExample3Fop;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Counterexample families. Each returns the functions on their natural
// domains; the certification grids live with the callers.

inline PiecewiseFn fn(const std::string& body, double lo, double hi,
                      const std::string& name = "") {
  return PiecewiseFn::parse(body, Interval{lo, hi}, name);
}

// Decreasing pair: jointly V-pseudoinvex and V-quasiinvex for the difference
// kernel, but the cubic component has a saddle, so the pair is not V-invex.
inline std::vector<PiecewiseFn> decreasing_pair() {
  return {fn("-x^3", -2.0, 2.0, "f1"), fn("-x", -2.0, 2.0, "f2")};
}

// Sum of two pseudoinvex functions with an interior maximum: not pseudoinvex.
inline PiecewiseFn sum_with_max() { return fn("3*x - exp(x)", -2.0, 2.0, "z"); }

// Sum of two quasiinvex functions that bumps above its endpoint values.
inline PiecewiseFn sum_with_bump() { return fn("x^2 - x^3", -1.0, 2.0, "z"); }

// Kinked pair certified V-pseudoinvex at 0 but not V-quasiinvex (the scaled
// gap vanishes at x = -sqrt(1/3) while the envelope slope stays positive).
inline std::vector<PiecewiseFn> kinked_pair_pseudo() {
  return {fn("piecewise{ [-1, 0]: -6*x^2; [0, 1]: x }", -1.0, 1.0, "f1"),
          fn("piecewise{ [-1, 0]: 7*x^2 + 9*x^6; [0, 1]: x }", -1.0, 1.0, "f2")};
}

inline ScalarMap kinked_pair_pseudo_eta() { return ScalarMap::parse("1 - 2*x^2 + u"); }

// Companion pair with the opposite asymmetry: V-quasiinvex at 0 but not
// V-pseudoinvex (witness at x = -1 where the envelope premise is exactly 0).
inline std::vector<PiecewiseFn> kinked_pair_quasi() {
  return {fn("piecewise{ [-1, 0]: x^2; [0, 1]: x }", -1.0, 1.0, "f1"),
          fn("piecewise{ [-1, 0]: -3*x^2; [0, 1]: x }", -1.0, 1.0, "f2")};
}

inline ScalarMap kinked_pair_quasi_eta() { return ScalarMap::parse("x^2 - 1 + u"); }

inline BetaVector kinked_pair_beta() {
  BetaVector b;
  b.components.push_back(ScalarMap::parse("x^2 + 1"));
  b.components.push_back(ScalarMap::parse("u^2 + 1"));
  return b;
}

inline ScalarMap difference_eta() { return ScalarMap::parse("x - u"); }

// Nonconvex but invex: the gap-over-slope kernel certifies it exactly.
inline PiecewiseFn cubic_plus_linear() { return fn("x^3 + x", -2.0, 2.0, "f"); }

inline ScalarMap cubic_plus_linear_eta() {
  return ScalarMap::parse("(x^3 + x - u^3 - u) / (3*u^2 + 1)");
}

struct InvexFixture {
  std::string name;
  PiecewiseFn f;
  ScalarMap eta;
};

// Functions that pass the invexity certificate on [-2, 2] grids, each paired
// with a kernel that works for it.
inline std::vector<InvexFixture> invex_fixtures() {
  std::vector<InvexFixture> out;
  out.push_back({"cubic_plus_linear", cubic_plus_linear(), cubic_plus_linear_eta()});
  out.push_back({"square", fn("x^2", -2.0, 2.0, "square"), difference_eta()});
  out.push_back({"abs", fn("abs(x)", -2.0, 2.0, "abs"), difference_eta()});
  out.push_back({"exp", fn("exp(x)", -2.0, 2.0, "exp"), difference_eta()});
  out.push_back({"hinge",
                 fn("piecewise{ [-2, 0]: x^2; [0, 1]: x; [1, 2]: x^2 }", -2.0, 2.0, "hinge"),
                 difference_eta()});
  return out;
}

struct VInvexFixture {
  std::string name;
  std::vector<PiecewiseFn> F;
  ScalarMap eta;
  std::vector<double> grid;
};

// Convex (hence V-invex with unit scalings) biobjective pairs whose weak
// Pareto sets are exactly the stationarity-certificate sets on the grid.
inline std::vector<VInvexFixture> v_invex_fixtures() {
  auto linspace = [](double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
      g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
  };
  std::vector<VInvexFixture> out;
  out.push_back({"squares",
                 {fn("x^2", -1.0, 2.0, "f1"), fn("(x - 1)^2", -1.0, 2.0, "f2")},
                 difference_eta(),
                 linspace(-1.0, 2.0, 61)});
  out.push_back({"abs_pair",
                 {fn("abs(x)", -1.0, 1.5, "f1"), fn("abs(x - 0.5)", -1.0, 1.5, "f2")},
                 difference_eta(),
                 linspace(-1.0, 1.5, 51)});
  return out;
}

}  // namespace invex::fixtures

#endif  // INVEX_FIXTURES_HPP_
