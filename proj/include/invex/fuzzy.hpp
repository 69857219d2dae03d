#ifndef INVEX_FUZZY_HPP_
#define INVEX_FUZZY_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "invex/interval.hpp"
#include "invex/piecewise.hpp"

namespace invex {

// Membership level in [0, 1].
struct AlphaLevel {
  double value;

  AlphaLevel(double v) : value(v) {  // NOLINT: implicit by design
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("AlphaLevel: value outside [0, 1]");
  }
};

// A fuzzy number as a piecewise-linear membership function with compact
// support: knots strictly increasing in x, membership 0 at both ends, reaching
// 1 (normality), nondecreasing up to the core and nonincreasing after it, so
// every alpha-cut is a single interval.
class FuzzyNumber {
 public:
  explicit FuzzyNumber(std::vector<std::pair<double, double>> knots)
      : knots_(std::move(knots)) {
    validate();
  }

  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  static FuzzyNumber triangular(double a, double b, double c) {
    return FuzzyNumber({{a, 0.0}, {b, 1.0}, {c, 0.0}});
  }

  double membership(double x) const {
    if (x <= knots_.front().first || x >= knots_.back().first) {
      if (x == knots_.front().first) return knots_.front().second;
      if (x == knots_.back().first) return knots_.back().second;
      return 0.0;
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (x <= knots_[i].first) {
        auto [x0, m0] = knots_[i - 1];
        auto [x1, m1] = knots_[i];
        return m0 + (m1 - m0) * (x - x0) / (x1 - x0);
      }
    }
    return 0.0;
  }

  // Exact alpha-cut by linear inversion of the rising and falling branches.
  // The 0-cut is the closed support.
  Interval alpha_cut(AlphaLevel a) const {
    double alpha = a.value;
    if (alpha == 0.0) return {knots_.front().first, knots_.back().first};
    double lo = knots_.front().first, hi = knots_.back().first;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (knots_[i].second >= alpha) {
        if (i == 0 || knots_[i].second == alpha) {
          lo = knots_[i].first;
        } else {
          auto [x0, m0] = knots_[i - 1];
          auto [x1, m1] = knots_[i];
          lo = x0 + (alpha - m0) * (x1 - x0) / (m1 - m0);
        }
        break;
      }
    }
    for (std::size_t i = knots_.size(); i-- > 0;) {
      if (knots_[i].second >= alpha) {
        if (i + 1 == knots_.size() || knots_[i].second == alpha) {
          hi = knots_[i].first;
        } else {
          auto [x0, m0] = knots_[i];
          auto [x1, m1] = knots_[i + 1];
          hi = x0 + (m0 - alpha) * (x1 - x0) / (m0 - m1);
        }
        break;
      }
    }
    return {lo, hi};
  }

  std::string to_string() const {
    std::string out = "knots[";
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (i) out += ", ";
      out += "(" + detail::fmt_num(knots_[i].first) + ", " +
             detail::fmt_num(knots_[i].second) + ")";
    }
    return out + "]";
  }

 private:
  void validate() const {
    if (knots_.size() < 3)
      throw std::invalid_argument("FuzzyNumber: need at least 3 knots");
    double peak = 0.0;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      auto [x, m] = knots_[i];
      if (m < 0.0 || m > 1.0)
        throw std::invalid_argument("FuzzyNumber: membership outside [0, 1]");
      if (i > 0 && !(x > knots_[i - 1].first))
        throw std::invalid_argument("FuzzyNumber: knot x values must be strictly increasing");
      peak = std::max(peak, m);
    }
    if (knots_.front().second != 0.0 || knots_.back().second != 0.0)
      throw std::invalid_argument("FuzzyNumber: support endpoints must have membership 0");
    if (peak != 1.0)
      throw std::invalid_argument("FuzzyNumber: not normal (max membership must be 1)");
    // Quasi-concavity: nondecreasing up to the first peak, nonincreasing after
    // the last, and flat at 1 across the core.
    std::size_t first_peak = 0, last_peak = 0;
    for (std::size_t i = 0; i < knots_.size(); ++i)
      if (knots_[i].second == 1.0) {
        if (knots_[first_peak].second != 1.0) first_peak = i;
        last_peak = i;
      }
    for (std::size_t i = 1; i <= first_peak; ++i)
      if (knots_[i].second < knots_[i - 1].second)
        throw std::invalid_argument("FuzzyNumber: membership not quasi-concave (rising branch)");
    for (std::size_t i = first_peak; i < last_peak; ++i)
      if (knots_[i].second != 1.0)
        throw std::invalid_argument("FuzzyNumber: membership not quasi-concave (core dip)");
    for (std::size_t i = last_peak + 1; i < knots_.size(); ++i)
      if (knots_[i].second > knots_[i - 1].second)
        throw std::invalid_argument("FuzzyNumber: membership not quasi-concave (falling branch)");
  }

  std::vector<std::pair<double, double>> knots_;
};

inline FuzzyNumber make_fuzzy(std::vector<std::pair<double, double>> knots) {
  return FuzzyNumber(std::move(knots));
}

inline Interval alpha_cut(const FuzzyNumber& u, AlphaLevel a) {
  return u.alpha_cut(a);
}

// Fuzzy-valued objective of the form  coefficient * shape(x) - subtrahend,
// with a nonnegative crisp shape. Endpoint functions follow the endpoint-wise
// cut formulas: the left endpoint subtracts the subtrahend's right endpoint.
class FuzzyObjective {
 public:
  using Subtrahend = std::variant<double, FuzzyNumber>;

  FuzzyObjective(FuzzyNumber coefficient, PiecewiseFn shape, Subtrahend subtrahend)
      : coefficient_(std::move(coefficient)),
        shape_(std::move(shape)),
        subtrahend_(std::move(subtrahend)) {}

  const FuzzyNumber& coefficient() const { return coefficient_; }
  const PiecewiseFn& shape() const { return shape_; }
  const Subtrahend& subtrahend() const { return subtrahend_; }

  Interval subtrahend_cut(AlphaLevel a) const {
    if (std::holds_alternative<double>(subtrahend_)) {
      double v = std::get<double>(subtrahend_);
      return {v, v};
    }
    return std::get<FuzzyNumber>(subtrahend_).alpha_cut(a);
  }

  // [f^L(x, a), f^R(x, a)]. The shape must be nonnegative on the domain so
  // the endpoint functions stay the scaled shapes below; violations are model
  // errors, not clamps.
  Interval eval_endpoints(double x, AlphaLevel a) const {
    Interval coef = coefficient_.alpha_cut(a);
    double s = shape_.value(x);
    if (s < 0.0)
      throw ModelError("fuzzy objective: shape negative, s(" + std::to_string(x) +
                       ") = " + std::to_string(s));
    Interval scaled{coef.lo * s, coef.hi * s};
    Interval result = interval_sub_cross(scaled, subtrahend_cut(a));
    if (!(result.lo <= result.hi))
      throw ModelError("fuzzy objective: endpoint inversion at (x=" +
                       std::to_string(x) + ", alpha=" + std::to_string(a.value) + ")");
    return result;
  }

  // Endpoint functions as scaled shapes: f^L = a_L(alpha) s - sub_R(alpha),
  // f^R = a_R(alpha) s - sub_L(alpha). Valid while the shape is nonnegative
  // on the domain of interest.
  PiecewiseFn left_endpoint_fn(AlphaLevel a) const {
    Interval coef = coefficient_.alpha_cut(a);
    Interval sub = subtrahend_cut(a);
    return shape_.scaled(coef.lo, -sub.hi);
  }

  PiecewiseFn right_endpoint_fn(AlphaLevel a) const {
    Interval coef = coefficient_.alpha_cut(a);
    Interval sub = subtrahend_cut(a);
    return shape_.scaled(coef.hi, -sub.lo);
  }

 private:
  FuzzyNumber coefficient_;
  PiecewiseFn shape_;
  Subtrahend subtrahend_;
};

}  // namespace invex

#endif  // INVEX_FUZZY_HPP_
