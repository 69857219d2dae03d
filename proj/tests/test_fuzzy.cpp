#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "invex/fuzzy.hpp"

using namespace invex;

namespace {

FuzzyNumber trapezoid_two() {
  return make_fuzzy({{0, 0}, {1, 0.75}, {2, 1}, {3, 0.75}, {4, 0}});
}

FuzzyNumber triangular_one() { return FuzzyNumber::triangular(0, 1, 2); }

PiecewiseFn log_abs_shape() {
  return PiecewiseFn::parse("ln(x^2 + abs(x) + 1) + 1", {-5.0, 10.0}, "s");
}

// Random valid fuzzy number: monotone rise, unit core, monotone fall.
FuzzyNumber random_fuzzy(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> gap(0.1, 2.0);
  std::uniform_real_distribution<double> level(0.05, 0.95);
  int rise = count(rng), fall = count(rng);
  std::vector<std::pair<double, double>> knots;
  double x = -3.0;
  knots.push_back({x, 0.0});
  std::vector<double> rising;
  for (int i = 0; i < rise; ++i) rising.push_back(level(rng));
  std::sort(rising.begin(), rising.end());
  for (double m : rising) knots.push_back({x += gap(rng), m});
  knots.push_back({x += gap(rng), 1.0});
  std::vector<double> falling;
  for (int i = 0; i < fall; ++i) falling.push_back(level(rng));
  std::sort(falling.begin(), falling.end(), std::greater<>());
  for (double m : falling) knots.push_back({x += gap(rng), m});
  knots.push_back({x += gap(rng), 0.0});
  return FuzzyNumber(std::move(knots));
}

}  // namespace

TEST_CASE("constructor enforces the membership invariants") {
  REQUIRE_NOTHROW(make_fuzzy({{1, 0}, {3, 1}, {5, 0}}));
  REQUIRE_NOTHROW(trapezoid_two());
  // x not increasing
  REQUIRE_THROWS_AS(make_fuzzy({{0, 0}, {1, 1}, {0.5, 0}}), std::invalid_argument);
  // no normality
  REQUIRE_THROWS_AS(make_fuzzy({{0, 0}, {1, 0.9}, {2, 0}}), std::invalid_argument);
  // not quasi-concave
  REQUIRE_THROWS_AS(make_fuzzy({{0, 0}, {1, 0.8}, {2, 0.2}, {3, 1}, {4, 0}}),
                    std::invalid_argument);
  // support endpoints must vanish
  REQUIRE_THROWS_AS(make_fuzzy({{0, 0.5}, {1, 1}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("triangular cuts by linear inversion") {
  FuzzyNumber u = make_fuzzy({{1, 0}, {3, 1}, {5, 0}});
  Interval cut = alpha_cut(u, 0.6);
  REQUIRE(cut.lo == Catch::Approx(2.2).epsilon(1e-14));
  REQUIRE(cut.hi == Catch::Approx(3.8).epsilon(1e-14));
  Interval core = alpha_cut(u, 1.0);
  REQUIRE(core.lo == 3.0);
  REQUIRE(core.hi == 3.0);
  Interval support = alpha_cut(u, 0.0);
  REQUIRE(support.lo == 1.0);
  REQUIRE(support.hi == 5.0);
}

TEST_CASE("trapezoidal cuts switch branches at the shoulder level") {
  FuzzyNumber two = trapezoid_two();
  Interval at075 = alpha_cut(two, 0.75);
  REQUIRE(at075.lo == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(at075.hi == Catch::Approx(3.0).margin(1e-14));
  Interval at1 = alpha_cut(two, 1.0);
  REQUIRE(at1.lo == 2.0);
  REQUIRE(at1.hi == 2.0);
  // Below the shoulder: [a/0.75, 4 - a/0.75]; above: [4a - 2, 6 - 4a].
  for (double a : {0.1, 0.3, 0.6}) {
    Interval c = alpha_cut(two, a);
    REQUIRE(c.lo == Catch::Approx(a / 0.75).epsilon(1e-13));
    REQUIRE(c.hi == Catch::Approx(4.0 - a / 0.75).epsilon(1e-13));
  }
  for (double a : {0.8, 0.9, 0.95}) {
    Interval c = alpha_cut(two, a);
    REQUIRE(c.lo == Catch::Approx(4.0 * a - 2.0).epsilon(1e-13));
    REQUIRE(c.hi == Catch::Approx(6.0 - 4.0 * a).epsilon(1e-13));
  }
}

TEST_CASE("cross interval subtraction") {
  REQUIRE(interval_sub_cross({0, 4}, {0, 2}).lo == -2.0);
  REQUIRE(interval_sub_cross({0, 4}, {0, 2}).hi == 4.0);
  REQUIRE(interval_sub_cross({3, 3}, {1, 1}).lo == 2.0);
  REQUIRE(interval_sub_cross({3, 3}, {1, 1}).hi == 2.0);
  REQUIRE(interval_sub_cross({2, 5}, {0, 0}).lo == 2.0);
  REQUIRE(interval_sub_cross({2, 5}, {0, 0}).hi == 5.0);
}

TEST_CASE("endpoint evaluation of the fuzzy objective") {
  FuzzyObjective obj(trapezoid_two(), log_abs_shape(), triangular_one());
  Interval a0 = obj.eval_endpoints(0.0, 0.0);
  REQUIRE(a0.lo == Catch::Approx(-2.0).margin(1e-14));
  REQUIRE(a0.hi == Catch::Approx(4.0).margin(1e-14));
  Interval a1 = obj.eval_endpoints(0.0, 1.0);
  REQUIRE(a1.lo == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(a1.hi == Catch::Approx(1.0).margin(1e-14));
  Interval x1 = obj.eval_endpoints(1.0, 1.0);
  double expected = 1.0 + 2.0 * std::log(3.0);
  REQUIRE(x1.lo == Catch::Approx(expected).epsilon(1e-13));
  REQUIRE(x1.hi == Catch::Approx(expected).epsilon(1e-13));
  REQUIRE(x1.lo == Catch::Approx(3.197).margin(5e-4));
}

TEST_CASE("endpoint functions mirror pointwise evaluation") {
  FuzzyObjective obj(trapezoid_two(), log_abs_shape(), triangular_one());
  for (double a : {0.0, 0.3, 0.75, 1.0}) {
    PiecewiseFn fL = obj.left_endpoint_fn(a);
    PiecewiseFn fR = obj.right_endpoint_fn(a);
    for (double x : {0.0, 0.5, 1.0, 2.5, 5.0}) {
      Interval iv = obj.eval_endpoints(x, a);
      REQUIRE(fL.value(x) == Catch::Approx(iv.lo).margin(1e-12));
      REQUIRE(fR.value(x) == Catch::Approx(iv.hi).margin(1e-12));
      REQUIRE(iv.lo <= iv.hi);
    }
  }
}

TEST_CASE("nestedness of cuts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    FuzzyNumber u = random_fuzzy(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double a1 = unit(rng), a2 = unit(rng);
    if (a1 > a2) std::swap(a1, a2);
    Interval outer = alpha_cut(u, a1);
    Interval inner = alpha_cut(u, a2);
    REQUIRE(outer.contains(inner, 1e-12));
  }
}

TEST_CASE("membership level reconstruction from cuts") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    FuzzyNumber u = random_fuzzy(rng);
    double lo = u.knots().front().first - 0.5;
    double hi = u.knots().back().first + 0.5;
    for (int i = 0; i <= 60; ++i) {
      double x = lo + (hi - lo) * i / 60.0;
      // The 0-cut is the closed support by convention, so start above 0.
      for (int k = 1; k <= 10; ++k) {
        double a = k / 10.0;
        double mu = u.membership(x);
        if (std::fabs(mu - a) <= 1e-12) continue;  // boundary tolerance
        REQUIRE((mu >= a) == alpha_cut(u, a).contains(x));
      }
    }
  }
}

TEST_CASE("shape sign violations are model errors") {
  FuzzyObjective obj(trapezoid_two(),
                     PiecewiseFn::parse("x - 1", {-5.0, 5.0}, "neg"), 0.0);
  // Coefficient support includes 0, shape negative: cut endpoints invert.
  REQUIRE_THROWS_AS(obj.eval_endpoints(-1.0, 0.9), ModelError);
}

TEST_CASE("cuts at a plateau level span the whole plateau") {
  // Rising plateau at exactly the queried level.
  FuzzyNumber u = make_fuzzy({{0, 0}, {1, 0.5}, {2, 0.5}, {3, 1}, {4, 0}});
  Interval cut = alpha_cut(u, 0.5);
  REQUIRE(cut.lo == 1.0);
  REQUIRE(cut.hi == Catch::Approx(3.5).margin(1e-14));
  // Falling plateau.
  FuzzyNumber v = make_fuzzy({{0, 0}, {1, 1}, {2, 0.5}, {3, 0.5}, {4, 0}});
  Interval cv = alpha_cut(v, 0.5);
  REQUIRE(cv.lo == 0.5);
  REQUIRE(cv.hi == 3.0);
}
