#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "invex/fixtures.hpp"
#include "invex/pareto.hpp"
#include "invex/subdiff.hpp"

using namespace invex;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return g;
}

VMP make_vmp(std::vector<PiecewiseFn> objs, std::vector<double> grid) {
  VMP p;
  p.objectives = std::move(objs);
  p.grid = std::move(grid);
  return p;
}

// Random continuous piecewise objective: quadratic plus a few absolute-value
// kinks, exactly representable in the expression language.
PiecewiseFn random_objective(std::mt19937& rng) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> kink(-0.9, 0.9);
  std::uniform_int_distribution<int> kinks(1, 2);
  std::string body = detail::fmt_num(coeff(rng)) + " + " + detail::fmt_num(coeff(rng)) +
                     "*x + " + detail::fmt_num(coeff(rng)) + "*x^2";
  int k = kinks(rng);
  for (int i = 0; i < k; ++i) {
    body += " + " + detail::fmt_num(coeff(rng)) + "*abs(x - " +
            detail::fmt_num(kink(rng)) + ")";
  }
  return PiecewiseFn::parse(body, {-1.0, 1.0});
}

}  // namespace

TEST_CASE("dominance relations") {
  REQUIRE(dominates({1, 2}, {1, 3}, DominanceMode::Pareto));
  REQUIRE_FALSE(dominates({1, 2}, {1, 3}, DominanceMode::Weak));
  REQUIRE(dominates({0, 0}, {1, 1}, DominanceMode::Weak));
  REQUIRE_FALSE(dominates({1, 2}, {2, 1}, DominanceMode::Pareto));
  REQUIRE_FALSE(dominates({1, 2}, {2, 1}, DominanceMode::Weak));
  REQUIRE_FALSE(dominates({1, 2}, {1, 2}, DominanceMode::Pareto));
  REQUIRE_THROWS_AS(dominates({1}, {1, 2}, DominanceMode::Pareto),
                    std::invalid_argument);
}

TEST_CASE("exact trade-off line is entirely Pareto optimal") {
  VMP p = make_vmp({fixtures::fn("x", 0.0, 1.0), fixtures::fn("1 - x", 0.0, 1.0)},
                   linspace(0.0, 1.0, 11));
  auto front = pareto_front(p, DominanceMode::Pareto);
  REQUIRE(front.points.size() == 11);
  auto weak = pareto_front(p, DominanceMode::Weak);
  REQUIRE(weak.points.size() == 11);
}

TEST_CASE("coincident objectives collapse the front to the minimizer") {
  VMP p = make_vmp({fixtures::fn("x^2", -1.0, 1.0), fixtures::fn("x^2", -1.0, 1.0)},
                   linspace(-1.0, 1.0, 21));
  auto front = pareto_front(p, DominanceMode::Pareto);
  REQUIRE(front.points == std::vector<double>{0.0});
}

TEST_CASE("empty feasible set is flagged, not an error") {
  VMP p = make_vmp({fixtures::fn("x", 0.0, 1.0)}, linspace(0.0, 1.0, 5));
  p.constraints_ineq.push_back(fixtures::fn("x + 1", -1.0, 2.0));  // x <= -1: empty
  auto front = pareto_front(p, DominanceMode::Pareto);
  REQUIRE(front.empty_feasible);
  REQUIRE(front.points.empty());
  REQUIRE_THROWS_AS(weighted_argmin(p, WeightVector({1.0})), ModelError);
}

TEST_CASE("weighted argmin returns all ties") {
  VMP p = make_vmp({fixtures::fn("x", 0.0, 1.0), fixtures::fn("1 - x", 0.0, 1.0)},
                   linspace(0.0, 1.0, 11));
  auto res = weighted_argmin(p, WeightVector({1.0, 1.0}));
  REQUIRE(res.points.size() == 11);  // constant sum
  VMP q = make_vmp({fixtures::fn("x", 0.0, 1.0), fixtures::fn("(1 - x)^2", 0.0, 1.0)},
                   linspace(0.0, 1.0, 5));
  auto single = weighted_argmin(q, WeightVector({1.0, 1.0}));
  REQUIRE(single.points == std::vector<double>{0.5});
}

TEST_CASE("weight vector validation") {
  REQUIRE_THROWS_AS(WeightVector({-0.5, 1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(WeightVector({0.0, 0.0}), std::invalid_argument);
  REQUIRE(WeightVector({0.0, 1.0}).strictly_positive() == false);
  REQUIRE(WeightVector({0.5, 1.0}).strictly_positive());
}

TEST_CASE("scalarization sufficiency on random piecewise instances") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  auto grid = linspace(-1.0, 1.0, 101);
  for (int trial = 0; trial < 100; ++trial) {
    VMP p = make_vmp({random_objective(rng), random_objective(rng)}, grid);
    WeightVector w({weight(rng), weight(rng)});
    auto argmin = weighted_argmin(p, w);
    auto front = pareto_front(p, DominanceMode::Pareto);
    auto weak = pareto_front(p, DominanceMode::Weak);
    for (double x : argmin.points) {
      REQUIRE(std::count(front.points.begin(), front.points.end(), x) == 1);
      REQUIRE(std::count(weak.points.begin(), weak.points.end(), x) == 1);
    }
    // Front ordering: the strict front sits inside the weak front.
    for (double x : front.points)
      REQUIRE(std::count(weak.points.begin(), weak.points.end(), x) == 1);
  }
}

TEST_CASE("nonnegative weights still land in the weak front") {
  auto grid = linspace(-1.0, 1.0, 41);
  VMP p = make_vmp({fixtures::fn("x^2", -1.0, 1.0), fixtures::fn("x", -1.0, 1.0)},
                   grid);
  auto argmin = weighted_argmin(p, WeightVector({1.0, 0.0}));
  auto weak = pareto_front(p, DominanceMode::Weak);
  for (double x : argmin.points)
    REQUIRE(std::count(weak.points.begin(), weak.points.end(), x) == 1);
}

TEST_CASE("geoffrion bound from strictly positive weights") {
  REQUIRE(geoffrion_bound(WeightVector({0.25, 0.75})) == Catch::Approx(3.0));
  REQUIRE(geoffrion_bound(WeightVector({1.0, 1.0})) == Catch::Approx(1.0));
  REQUIRE_THROWS_AS(geoffrion_bound(WeightVector({0.0, 1.0})), std::invalid_argument);
}

TEST_CASE("symmetric trade-off passes the audit at M = 1") {
  VMP p = make_vmp({fixtures::fn("x", 0.0, 1.0), fixtures::fn("1 - x", 0.0, 1.0)},
                   linspace(0.0, 1.0, 11));
  auto rep = geoffrion_audit(p, 0.5, 1.0);
  REQUIRE(rep.efficient);
  REQUIRE(rep.passed);
  REQUIRE(rep.worst_ratio == Catch::Approx(1.0));
}

TEST_CASE("cubic flat spot fails the audit on refined grids") {
  // Improving the second objective near 0 costs next to nothing cubed:
  // trade-off ratios blow up as the grid refines.
  VMP p = make_vmp({fixtures::fn("x^3", -1.0, 1.0), fixtures::fn("1 - x", -1.0, 1.0)},
                   linspace(-1.0, 1.0, 201));
  auto rep = geoffrion_audit(p, 0.0, 100.0);
  REQUIRE(rep.efficient);
  REQUIRE_FALSE(rep.passed);
  REQUIRE(rep.worst_ratio > 100.0);
  VMP q = make_vmp({fixtures::fn("x^3", -1.0, 1.0), fixtures::fn("1 - x", -1.0, 1.0)},
                   linspace(-1.0, 1.0, 2001));
  auto rep2 = geoffrion_audit(q, 0.0, 10000.0);
  REQUIRE_FALSE(rep2.passed);
}

TEST_CASE("audit rejects non-efficient points") {
  VMP p = make_vmp({fixtures::fn("x^2", -1.0, 1.0), fixtures::fn("x^2", -1.0, 1.0)},
                   linspace(-1.0, 1.0, 21));
  auto rep = geoffrion_audit(p, 0.5, 10.0);
  REQUIRE_FALSE(rep.efficient);
  REQUIRE_FALSE(rep.passed);
}

TEST_CASE("stationarity weights on interval subdifferentials") {
  auto cert = stationarity_weights({Polytope::singleton(-1.0), Polytope::singleton(1.0)});
  REQUIRE(cert.has_value());
  REQUIRE(cert->tau[0] == Catch::Approx(0.5).margin(1e-9));
  REQUIRE(cert->tau[1] == Catch::Approx(0.5).margin(1e-9));

  auto absorb = stationarity_weights(
      {Polytope::from_interval(-1.0, 1.0), Polytope::singleton(-5.0)});
  REQUIRE(absorb.has_value());
  // All mass goes to the interval that can absorb zero alone.
  REQUIRE(absorb->tau[0] == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(absorb->tau[1] == Catch::Approx(0.0).margin(1e-9));
  REQUIRE(std::fabs(absorb->xi[0][0]) <= 1e-9);

  REQUIRE_FALSE(stationarity_weights({Polytope::singleton(2.0),
                                      Polytope::singleton(3.0)}).has_value());
  REQUIRE_THROWS_AS(stationarity_weights({}), std::invalid_argument);
}

TEST_CASE("stationarity certificates characterize weak fronts of V-invex pairs") {
  for (const auto& fx : fixtures::v_invex_fixtures()) {
    VMP p = make_vmp(fx.F, fx.grid);
    auto weak = pareto_front(p, DominanceMode::Weak);
    for (double u : fx.grid) {
      std::vector<Polytope> subs;
      for (const auto& f : fx.F) subs.push_back(clarke_subdiff_1d(f, u));
      bool stationary = stationarity_weights(subs).has_value();
      bool in_weak = std::count(weak.points.begin(), weak.points.end(), u) > 0;
      INFO(fx.name << " at u = " << u);
      REQUIRE(stationary == in_weak);
    }
  }
}
