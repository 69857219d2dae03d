#ifndef INVEX_INTERVAL_HPP_
#define INVEX_INTERVAL_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace invex {

// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool is_point(double tol = 0.0) const { return hi - lo <= tol; }

  bool contains(double v, double tol = 0.0) const {
    return lo - tol <= v && v <= hi + tol;
  }
  bool contains(const Interval& other, double tol = 0.0) const {
    return lo - tol <= other.lo && other.hi <= hi + tol;
  }

  // Distance from v to the interval; 0 when inside.
  double distance(double v) const {
    if (v < lo) return lo - v;
    if (v > hi) return v - hi;
    return 0.0;
  }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }

  // Scaling flips orientation for negative factors.
  Interval scaled(double c) const {
    return c >= 0 ? Interval{c * lo, c * hi} : Interval{c * hi, c * lo};
  }
};

// Endpoint-wise interval difference: [A.lo - B.hi, A.hi - B.lo].
inline Interval interval_sub_cross(const Interval& a, const Interval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

}  // namespace invex

#endif  // INVEX_INTERVAL_HPP_
