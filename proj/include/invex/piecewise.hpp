#ifndef INVEX_PIECEWISE_HPP_
#define INVEX_PIECEWISE_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invex/expr.hpp"
#include "invex/interval.hpp"

namespace invex {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scalar function of x, piecewise C^1 on its domain with declared
// breakpoints. Breakpoints come from the expression itself (piecewise
// boundaries and affine abs-arguments); there is no numeric kink discovery.
class PiecewiseFn {
 public:
  PiecewiseFn() = default;

  PiecewiseFn(ExprFn expr, Interval domain, std::string name = "")
      : expr_(std::move(expr)), domain_(domain), name_(std::move(name)) {
    for (double b : expr_.breakpoint_candidates("x")) {
      if (b > domain_.lo + kSnap && b < domain_.hi - kSnap) breakpoints_.push_back(b);
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end(),
                                   [](double a, double b) { return std::fabs(a - b) <= kSnap; }),
                       breakpoints_.end());
    validate_continuity();
  }

  static PiecewiseFn parse(const std::string& text, Interval domain,
                           std::string name = "") {
    return PiecewiseFn(ExprFn::parse(text), domain, std::move(name));
  }

  bool valid() const { return expr_.valid(); }
  const Interval& domain() const { return domain_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::string& name() const { return name_; }
  const ExprFn& expr() const { return expr_; }

  bool in_domain(double x) const { return domain_.contains(x, kSnap); }

  double value(double x) const {
    check_domain(x);
    return expr_.eval(Env{{"x", x}});
  }

  // One-sided derivative limit at x (side -1/+1); two-sided for side 0.
  double derivative(double x, Side side = 0) const {
    check_domain(x);
    return expr_.derivative(Env{{"x", x}}, "x", side);
  }

  bool is_breakpoint(double x) const {
    for (double b : breakpoints_)
      if (std::fabs(x - b) <= kSnap) return true;
    return false;
  }

  // scale * f + offset. Shares the expression tree; breakpoints carry over.
  PiecewiseFn scaled(double scale, double offset = 0.0) const {
    PiecewiseFn out;
    out.expr_ = expr_.affine(scale, offset);
    out.domain_ = domain_;
    out.breakpoints_ = breakpoints_;
    out.name_ = name_;
    return out;
  }

  static constexpr double kSnap = 1e-12;

 private:
  void check_domain(double x) const {
    if (!domain_.contains(x, kSnap))
      throw ModelError("function " + (name_.empty() ? "<anon>" : name_) +
                       ": argument " + std::to_string(x) + " outside domain [" +
                       std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + "]");
  }

  void validate_continuity() const {
    // Only piecewise nodes can disagree across a breakpoint; abs is continuous.
    for (double b : breakpoints_) {
      double vl = expr_.eval(Env{{"x", b}}, -1);
      double vr = expr_.eval(Env{{"x", b}}, +1);
      double scale = std::max({1.0, std::fabs(vl), std::fabs(vr)});
      if (std::fabs(vr - vl) > 1e-9 * scale)
        throw ModelError("function " + (name_.empty() ? "<anon>" : name_) +
                         ": discontinuous at breakpoint " + std::to_string(b));
    }
  }

  ExprFn expr_;
  Interval domain_{0.0, 0.0};
  std::vector<double> breakpoints_;
  std::string name_;
};

}  // namespace invex

#endif  // INVEX_PIECEWISE_HPP_
