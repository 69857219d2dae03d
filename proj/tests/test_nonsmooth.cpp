#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "invex/subdiff.hpp"

using namespace invex;

namespace {

PiecewiseFn log_abs_shape() {
  return PiecewiseFn::parse("ln(x^2 + abs(x) + 1) + 1", {-5.0, 10.0}, "s");
}

}  // namespace

TEST_CASE("exact subdifferentials at kinks and smooth points") {
  PiecewiseFn s = log_abs_shape();
  Interval at0 = clarke_subdiff_1d(s, 0.0).interval();
  REQUIRE(at0.lo == Catch::Approx(-1.0).margin(1e-14));
  REQUIRE(at0.hi == Catch::Approx(1.0).margin(1e-14));

  PiecewiseFn g = PiecewiseFn::parse("x^2 - 5*x", {-5.0, 10.0}, "g");
  Interval gat0 = clarke_subdiff_1d(g, 0.0).interval();
  REQUIRE(gat0.lo == -5.0);
  REQUIRE(gat0.hi == -5.0);

  PiecewiseFn g2 = PiecewiseFn::parse("piecewise{ [-5, 0]: -3*x^2; [0, 5]: x }",
                                      {-5.0, 5.0}, "g2");
  Interval g2at0 = clarke_subdiff_1d(g2, 0.0).interval();
  REQUIRE(g2at0.lo == 0.0);
  REQUIRE(g2at0.hi == 1.0);

  REQUIRE_THROWS_AS(clarke_subdiff_1d(s, 20.0), ModelError);
}

TEST_CASE("smooth interior points match finite differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pick(-4.0, 4.0);
  PiecewiseFn fns[] = {
      log_abs_shape(),
      PiecewiseFn::parse("x^2 - 5*x", {-5.0, 10.0}),
      PiecewiseFn::parse("exp(x) - 3*x", {-5.0, 5.0}),
  };
  for (const auto& f : fns) {
    for (int i = 0; i < 25; ++i) {
      double x = pick(rng);
      if (f.is_breakpoint(x)) continue;
      Interval d = clarke_subdiff_1d(f, x).interval();
      REQUIRE(d.lo == d.hi);
      double h = 1e-6;
      double fd = (f.value(x + h) - f.value(x - h)) / (2 * h);
      REQUIRE(d.lo == Catch::Approx(fd).margin(1e-6));
    }
  }
}

TEST_CASE("directional derivative is the hull support function") {
  Polytope p = Polytope::from_interval(-1.0, 1.0);
  REQUIRE(directional_derivative(p, 1.0) == 1.0);
  REQUIRE(directional_derivative(Polytope::singleton(-5.0), -1.0) == 5.0);
  REQUIRE(directional_derivative(Polytope::from_interval(0.0, 1.0), -2.0) == 0.0);
}

TEST_CASE("support spread is nonnegative") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> v(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    double a = v(rng), b = v(rng), d = v(rng);
    Polytope p = Polytope::from_interval(std::min(a, b), std::max(a, b));
    REQUIRE(directional_derivative(p, d) + directional_derivative(p, -d) >= 0.0);
  }
}

TEST_CASE("zero membership in hulls") {
  REQUIRE(contains_zero(Polytope::from_interval(-1.0, 1.0)));
  REQUIRE_FALSE(contains_zero(Polytope::singleton(-5.0)));
  REQUIRE(contains_zero(Polytope::from_interval(0.0, 1.0)));  // boundary
  // 2-D: origin inside the triangle, then outside.
  Polytope tri(std::vector<std::vector<double>>{{1, 0}, {-1, 1}, {-1, -1}});
  REQUIRE(contains_zero(tri));
  Polytope shifted(std::vector<std::vector<double>>{{1, 1}, {2, 1}, {1, 2}});
  REQUIRE_FALSE(contains_zero(shifted));
}

TEST_CASE("limiting gradient estimation recovers kink hulls") {
  std::vector<double> radii{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  PiecewiseFn s = log_abs_shape();
  auto est = estimate_limiting_gradients(
      [&s](double x) { return s.value(x); }, 0.0, radii, 64);
  REQUIRE(est.hull.interval().lo == Catch::Approx(-1.0).margin(1e-4));
  REQUIRE(est.hull.interval().hi == Catch::Approx(1.0).margin(1e-4));

  auto abs_est = estimate_limiting_gradients(
      [](double x) { return std::fabs(x); }, 0.0, radii, 64);
  REQUIRE(abs_est.hull.interval().lo == Catch::Approx(-1.0).margin(1e-6));
  REQUIRE(abs_est.hull.interval().hi == Catch::Approx(1.0).margin(1e-6));

  // Smooth case clusters at the derivative.
  auto smooth = estimate_limiting_gradients(
      [](double x) { return x * x; }, 1.0, radii, 64);
  REQUIRE(smooth.hull.interval().lo == Catch::Approx(2.0).margin(1e-6));
  REQUIRE(smooth.hull.interval().hi == Catch::Approx(2.0).margin(1e-6));
}

TEST_CASE("estimation hull endpoints converge as radii shrink") {
  std::vector<double> radii{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  PiecewiseFn s = log_abs_shape();
  auto est = estimate_limiting_gradients(
      [&s](double x) { return s.value(x); }, 0.0, radii, 64);
  Interval exact = clarke_subdiff_1d(s, 0.0).interval();
  double prev_err = std::numeric_limits<double>::infinity();
  for (const auto& [r, hull] : est.per_radius) {
    double err = std::max(std::fabs(hull.lo - exact.lo), std::fabs(hull.hi - exact.hi));
    REQUIRE(err <= prev_err + 1e-4);  // monotone within noise
    prev_err = err;
  }
  REQUIRE(prev_err <= 1e-4);
}

TEST_CASE("estimation input validation") {
  auto f = [](double x) { return x; };
  REQUIRE_THROWS_AS(estimate_limiting_gradients(f, 0.0, {1e-2, 1e-3}, 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(estimate_limiting_gradients(f, 0.0, {1e-3, 1e-2}, 16),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(estimate_limiting_gradients(f, 0.0, {}, 16),
                    std::invalid_argument);
}

TEST_CASE("convex pieces satisfy the subgradient inequality") {
  PiecewiseFn sq = PiecewiseFn::parse("x^2", {-3.0, 3.0});
  for (double x = -2.0; x <= 2.0; x += 0.25) {
    Interval d = clarke_subdiff_1d(sq, x).interval();
    for (double y = -2.0; y <= 2.0; y += 0.25) {
      for (double xi : {d.lo, d.hi}) {
        REQUIRE(sq.value(y) >= sq.value(x) + xi * (y - x) - 1e-12);
      }
    }
  }
}

TEST_CASE("n-dimensional estimation clusters at the gradient") {
  auto f = [](const std::vector<double>& v) {
    return 3.0 * v[0] - 2.0 * v[1] + v[0] * v[0];
  };
  Polytope p = estimate_limiting_gradients_nd(f, {1.0, 0.0}, {1e-3, 1e-5}, 16);
  for (const auto& g : p.generators()) {
    REQUIRE(g[0] == Catch::Approx(5.0).margin(2e-2));
    REQUIRE(g[1] == Catch::Approx(-2.0).margin(2e-2));
  }
}
