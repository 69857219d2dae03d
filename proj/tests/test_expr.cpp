#include <catch_amalgamated.hpp>

#include <cmath>

#include "invex/expr.hpp"
#include "invex/piecewise.hpp"

using namespace invex;

TEST_CASE("arithmetic with standard precedence") {
  ExprFn e = ExprFn::parse("1 + 2*3^2 - 4/8");
  REQUIRE(e.eval(Env{}) == Catch::Approx(18.5));
  REQUIRE(ExprFn::parse("2^3^2").eval(Env{}) == Catch::Approx(512.0));  // right-assoc
  REQUIRE(ExprFn::parse("-x^2", {"x"}).eval(Env{{"x", 3.0}}) == Catch::Approx(-9.0));
}

TEST_CASE("log-abs shape evaluates and differentiates") {
  ExprFn s = ExprFn::parse("ln(x^2 + abs(x) + 1) + 1");
  REQUIRE(s.eval(Env{{"x", 0.0}}) == Catch::Approx(1.0));
  REQUIRE(s.eval(Env{{"x", 1.0}}) == Catch::Approx(1.0 + std::log(3.0)));
  // One-sided slopes at the kink.
  REQUIRE(s.derivative(Env{{"x", 0.0}}, "x", +1) == Catch::Approx(1.0));
  REQUIRE(s.derivative(Env{{"x", 0.0}}, "x", -1) == Catch::Approx(-1.0));
  // Smooth point: (2x+1)/(x^2+x+1).
  REQUIRE(s.derivative(Env{{"x", 0.5}}, "x", 0) == Catch::Approx(2.0 / 1.75));
}

TEST_CASE("piecewise expression selects sides at boundaries") {
  ExprFn g = ExprFn::parse("piecewise{ [-1, 0]: -3*x^2; [0, 1]: x }");
  REQUIRE(g.eval(Env{{"x", -0.5}}) == Catch::Approx(-0.75));
  REQUIRE(g.eval(Env{{"x", 0.5}}) == Catch::Approx(0.5));
  REQUIRE(g.derivative(Env{{"x", 0.0}}, "x", -1) == Catch::Approx(0.0));
  REQUIRE(g.derivative(Env{{"x", 0.0}}, "x", +1) == Catch::Approx(1.0));
}

TEST_CASE("min and max differentiate through ties") {
  ExprFn m = ExprFn::parse("max(x, x^2)");
  REQUIRE(m.eval(Env{{"x", 0.5}}) == Catch::Approx(0.5));
  REQUIRE(m.eval(Env{{"x", 2.0}}) == Catch::Approx(4.0));
  REQUIRE(m.derivative(Env{{"x", 1.0}}, "x", +1) == Catch::Approx(2.0));
  REQUIRE(m.derivative(Env{{"x", 1.0}}, "x", -1) == Catch::Approx(1.0));
}

TEST_CASE("syntax errors carry positions") {
  try {
    ExprFn::parse("x +* 2");
    FAIL("expected a parse error");
  } catch (const ExprError& e) {
    REQUIRE(e.line == 1);
    REQUIRE(e.column >= 3);
    REQUIRE(e.column <= 4);
  }
}

TEST_CASE("unknown identifiers are rejected") {
  REQUIRE_THROWS_AS(ExprFn::parse("x + y", {"x"}), ExprError);
  REQUIRE_NOTHROW(ExprFn::parse("x - u", {"x", "u"}));
}

TEST_CASE("pretty-printed expressions reparse structurally equal") {
  const char* cases[] = {
      "ln(x^2 + abs(x) + 1) + 1",
      "piecewise{ [-1, 0]: -3*x^2; [0, 1]: x }",
      "(x^3 + x - u^3 - u) / (3*u^2 + 1)",
      "-x^2 - 1 + u",
      "max(x, min(x^2, exp(x)))",
      "1 - 2*x^2 + u",
  };
  for (const char* c : cases) {
    ExprFn a = ExprFn::parse(c, {"x", "u"});
    ExprFn b = ExprFn::parse(a.to_string(), {"x", "u"});
    INFO(c << "  ->  " << a.to_string());
    REQUIRE(a.structurally_equal(b));
  }
}

TEST_CASE("affine wrapper scales and shifts") {
  ExprFn s = ExprFn::parse("x^2");
  ExprFn t = s.affine(3.0, -2.0);
  REQUIRE(t.eval(Env{{"x", 2.0}}) == Catch::Approx(10.0));
  REQUIRE(t.derivative(Env{{"x", 2.0}}, "x", 0) == Catch::Approx(12.0));
}

TEST_CASE("breakpoint candidates from abs and piecewise") {
  ExprFn e = ExprFn::parse("abs(2*x - 1) + piecewise{ [0, 2]: x; [2, 3]: 2*x - 2 }");
  auto bps = e.breakpoint_candidates("x");
  REQUIRE(std::count(bps.begin(), bps.end(), 0.5) == 1);
  REQUIRE(std::count(bps.begin(), bps.end(), 2.0) == 1);
  // Non-affine abs arguments contribute nothing.
  auto none = ExprFn::parse("abs(x^2 - 1)").breakpoint_candidates("x");
  REQUIRE(none.empty());
}

TEST_CASE("piecewise function machinery") {
  PiecewiseFn s = PiecewiseFn::parse("ln(x^2 + abs(x) + 1) + 1", {-5.0, 10.0}, "s");
  REQUIRE(s.breakpoints().size() == 1);
  REQUIRE(s.is_breakpoint(0.0));
  REQUIRE(s.value(0.0) == Catch::Approx(1.0));
  REQUIRE_THROWS_AS(s.value(11.0), ModelError);
  // Discontinuous declarations are rejected.
  REQUIRE_THROWS_AS(
      PiecewiseFn::parse("piecewise{ [-2, -1]: x - 1; [-1, 0]: 0 }", {-2.0, 0.0}),
      ModelError);
}
