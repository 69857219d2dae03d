#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "invex/fixtures.hpp"
#include "invex/kkt.hpp"
#include "invex/subdiff.hpp"

using namespace invex;

namespace {

Polytope iv(double lo, double hi) { return Polytope::from_interval(lo, hi); }

// Independent 1-D feasibility oracle: for each lambda1 on a fine grid, the
// reachable constraint contribution over the multiplier box is a closed-form
// interval, so the margin is exact per grid point and concave in lambda1.
bool box_scan_feasible(const Interval& L, const Interval& R,
                       const std::vector<Interval>& gs, double mu_max,
                       double* best_margin = nullptr) {
  double reach_lo = 0.0, reach_hi = 0.0;
  for (const auto& g : gs) {
    reach_lo += std::min(0.0, mu_max * g.lo);
    reach_hi += std::max(0.0, mu_max * g.hi);
  }
  double best = -std::numeric_limits<double>::infinity();
  const int steps = 2000;
  for (int i = 0; i <= steps; ++i) {
    double l1 = kLambdaMin + (1.0 - 2.0 * kLambdaMin) * i / steps;
    double l2 = 1.0 - l1;
    double lo = l1 * L.lo + l2 * R.lo + reach_lo;
    double hi = l1 * L.hi + l2 * R.hi + reach_hi;
    best = std::max(best, std::min(-lo, hi));
  }
  if (best_margin) *best_margin = best;
  return best >= 0.0;
}

}  // namespace

TEST_CASE("active sets with feasibility errors") {
  std::vector<PiecewiseFn> g{fixtures::fn("x^2 - 5*x", -5.0, 10.0, "g")};
  auto J = active_set(g, 0.0);
  REQUIRE(J == std::vector<std::size_t>{0});
  REQUIRE(active_set(g, 1.0).empty());  // g(1) = -4: inactive

  std::vector<PiecewiseFn> two{
      fixtures::fn("x^2 + x", -5.0, 5.0, "g1"),
      fixtures::fn("piecewise{ [-5, 0]: -3*x^2; [0, 5]: x }", -5.0, 5.0, "g2")};
  REQUIRE(active_set(two, 0.0) == std::vector<std::size_t>{0, 1});
  REQUIRE_THROWS_AS(active_set(two, 0.5), ModelError);  // g1(0.5) > 0
}

TEST_CASE("verification of the trapezoid-coefficient stationarity inclusion") {
  // Level 0: objective part 0.25*{0} + 0.75*[-4,4] = [-3,3]; constraint part
  // 0.4*{-5} = {-2}; the sum [-5,1] contains zero.
  MultiplierSet m;
  m.lambda1 = 0.25;
  m.lambda2 = 0.75;
  m.mu = {0.4};
  auto rep = kkt_verify(iv(0, 0), iv(-4, 4), {Polytope::singleton(-5.0)}, {}, m);
  REQUIRE(rep.feasible);
  REQUIRE(rep.residual <= 1e-9);

  // Two constraints active with unit multipliers: [-c+1, c+2] contains zero.
  MultiplierSet m2;
  m2.lambda1 = 0.25;
  m2.lambda2 = 0.75;
  m2.mu = {1.0, 1.0};
  auto rep2 = kkt_verify(iv(0, 0), iv(-4, 4),
                         {Polytope::singleton(1.0), iv(0, 1)}, {}, m2);
  REQUIRE(rep2.feasible);

  // Interval constraint subdifferential [-1, 0] with mu = 1.
  MultiplierSet m3;
  m3.lambda1 = 0.25;
  m3.lambda2 = 0.75;
  m3.mu = {1.0};
  auto rep4 = kkt_verify(iv(0, 0), iv(-4, 4), {iv(-1, 0)}, {}, m3);
  REQUIRE(rep4.feasible);
}

TEST_CASE("verification reports infeasibility with the residual distance") {
  MultiplierSet m;
  m.lambda1 = 0.5;
  m.lambda2 = 0.5;
  auto rep = kkt_verify(Polytope::singleton(1.0), Polytope::singleton(1.0), {}, {}, m);
  REQUIRE_FALSE(rep.feasible);
  REQUIRE(rep.residual == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("verification rejects sign violations") {
  MultiplierSet bad;
  bad.lambda1 = 0.0;
  bad.lambda2 = 1.0;
  REQUIRE_THROWS_AS(kkt_verify(iv(-1, 1), iv(-1, 1), {}, {}, bad),
                    std::invalid_argument);
  MultiplierSet neg;
  neg.lambda1 = 0.5;
  neg.lambda2 = 0.5;
  neg.mu = {-0.1};
  REQUIRE_THROWS_AS(kkt_verify(iv(-1, 1), iv(-1, 1), {iv(0, 1)}, {}, neg),
                    std::invalid_argument);
}

TEST_CASE("solver finds multipliers for the interval instance") {
  auto fixed = kkt_solve(iv(-1, 1), iv(-1, 1), {Polytope::singleton(-5.0)}, {},
                         LambdaMode::Fixed, 0.25, 0.75);
  REQUIRE(fixed.feasible);
  auto verify = kkt_verify(iv(-1, 1), iv(-1, 1), {Polytope::singleton(-5.0)}, {},
                           fixed.multipliers);
  REQUIRE(verify.feasible);
  REQUIRE(verify.residual <= 1e-9);

  // No cancellation available: singleton positives with no constraints.
  auto infeasible = kkt_solve(Polytope::singleton(1.0), Polytope::singleton(1.0), {},
                              {}, LambdaMode::Normalized);
  REQUIRE_FALSE(infeasible.feasible);

  // Zero sits in both endpoint hulls.
  auto zero = kkt_solve(iv(-1, 1), iv(-1, 1), {}, {}, LambdaMode::Normalized);
  REQUIRE(zero.feasible);
  REQUIRE(zero.multipliers.lambda1 + zero.multipliers.lambda2 ==
          Catch::Approx(1.0).margin(1e-9));
  REQUIRE(zero.multipliers.lambda1 >= kLambdaMin - 1e-12);
  REQUIRE(zero.multipliers.lambda2 >= kLambdaMin - 1e-12);
}

TEST_CASE("solver rejects empty generator sets") {
  REQUIRE_THROWS_AS(kkt_solve(Polytope(), iv(-1, 1), {}, {}, LambdaMode::Normalized),
                    std::invalid_argument);
}

TEST_CASE("equality multipliers round-trip through verification") {
  // Equality polytope strictly positive: theta must go negative to cancel.
  auto rep = kkt_solve(Polytope::singleton(2.0), Polytope::singleton(3.0), {},
                       {iv(1.0, 2.0)}, LambdaMode::Normalized);
  REQUIRE(rep.feasible);
  REQUIRE(rep.multipliers.theta.size() == 1);
  REQUIRE(rep.multipliers.theta[0] < 0.0);
  auto verify = kkt_verify(Polytope::singleton(2.0), Polytope::singleton(3.0), {},
                           {iv(1.0, 2.0)}, rep.multipliers);
  REQUIRE(verify.feasible);
  REQUIRE(verify.residual <= 1e-9);
}

TEST_CASE("round-trip and box-scan agreement on randomized instances") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> center(-3.0, 3.0);
  std::uniform_real_distribution<double> width(0.1, 2.0);
  std::uniform_real_distribution<double> mag(0.5, 3.0);
  std::uniform_int_distribution<int> gcount(0, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  const double mu_max = 10.0;
  int done = 0, solver_feasible = 0;
  while (done < 100) {
    // Sign-correlated instances are robustly infeasible; independent draws
    // are mostly feasible. Together both solver outcomes get exercised.
    bool correlated = coin(rng) == 1;
    double sgn = coin(rng) == 1 ? 1.0 : -1.0;
    auto draw = [&](double& c0, double& w0) {
      if (correlated) {
        c0 = sgn * mag(rng);
        w0 = 0.4 * std::fabs(c0);
      } else {
        c0 = center(rng);
        w0 = width(rng);
      }
    };
    double cl, wl, cr, wr;
    draw(cl, wl);
    draw(cr, wr);
    Interval L{cl - wl, cl + wl}, R{cr - wr, cr + wr};
    std::vector<Interval> gs;
    int m = gcount(rng);
    for (int j = 0; j < m; ++j) {
      double c, w;
      draw(c, w);
      gs.push_back({c - w, c + w});
    }
    double margin = 0.0;
    bool scan = box_scan_feasible(L, R, gs, mu_max, &margin);
    // Skip borderline instances: the scan cannot decide them robustly.
    if (std::fabs(margin) < 5e-3) continue;

    std::vector<Polytope> gpolys;
    for (const auto& g : gs) gpolys.push_back(Polytope::from_interval(g));
    auto rep = kkt_solve(Polytope::from_interval(L), Polytope::from_interval(R),
                         gpolys, {}, LambdaMode::Normalized);
    // Skip instances the solver can only certify with multipliers outside
    // the scanned box.
    if (rep.feasible) {
      double total_mu = 0.0;
      for (double v : rep.multipliers.mu) total_mu += v;
      if (total_mu > 0.8 * mu_max) continue;
    }
    ++done;
    INFO("instance " << done << " margin " << margin);
    REQUIRE(rep.feasible == scan);
    if (rep.feasible) {
      ++solver_feasible;
      auto verify = kkt_verify(Polytope::from_interval(L), Polytope::from_interval(R),
                               gpolys, {}, rep.multipliers);
      REQUIRE(verify.feasible);
      REQUIRE(verify.residual <= 1e-9);
    }
  }
  REQUIRE(done == 100);
  REQUIRE(solver_feasible > 10);        // both outcomes exercised
  REQUIRE(solver_feasible < 90);
}

TEST_CASE("two-dimensional stationarity inclusion") {
  Polytope PL(std::vector<std::vector<double>>{{1.0, 0.0}});
  Polytope PR(std::vector<std::vector<double>>{{0.0, 1.0}});
  Polytope G(std::vector<std::vector<double>>{{-2.0, 0.0}, {0.0, -2.0}, {-2.0, -2.0}});
  MultiplierSet m;
  m.lambda1 = 0.5;
  m.lambda2 = 0.5;
  m.mu = {0.5};
  auto rep = kkt_verify(PL, PR, {G}, {}, m);
  REQUIRE(rep.feasible);
  REQUIRE(rep.residual <= 1e-9);
  // (-1, -1) realizes the cancellation: midpoint of two generators.
  REQUIRE(rep.selected[2][0] == Catch::Approx(-1.0).margin(1e-9));
  REQUIRE(rep.selected[2][1] == Catch::Approx(-1.0).margin(1e-9));

  auto solved = kkt_solve(PL, PR, {G}, {}, LambdaMode::Normalized);
  REQUIRE(solved.feasible);
  auto verify = kkt_verify(PL, PR, {G}, {}, solved.multipliers);
  REQUIRE(verify.feasible);
  REQUIRE(verify.residual <= 1e-9);

  // Without the constraint the two singletons cannot cancel.
  auto bare = kkt_solve(PL, PR, {}, {}, LambdaMode::Normalized);
  REQUIRE_FALSE(bare.feasible);
}

TEST_CASE("weighted coefficient envelope matches its closed forms") {
  FuzzyNumber two = make_fuzzy({{0, 0}, {1, 0.75}, {2, 1}, {3, 0.75}, {4, 0}});
  for (int i = 0; i <= 40; ++i) {
    double a = i / 40.0;
    Interval cut = two.alpha_cut(a);
    double c = 0.25 * cut.lo + 0.75 * cut.hi;
    double closed = a <= 0.75 ? 3.0 - (2.0 / 3.0) * a : 4.0 - 2.0 * a;
    REQUIRE(std::fabs(c - closed) <= 1e-12);
    REQUIRE(c >= 2.0 - 1e-12);  // the sweep stays feasible for mu = 2/5
  }
}
