#ifndef INVEX_POLYTOPE_HPP_
#define INVEX_POLYTOPE_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "invex/interval.hpp"

namespace invex {

// Convex hull of a finite generator set in R^n. One-dimensional polytopes are
// kept canonical as [min, max] (a single generator when degenerate).
class Polytope {
 public:
  Polytope() = default;

  explicit Polytope(std::vector<std::vector<double>> generators)
      : gens_(std::move(generators)) {
    if (gens_.empty()) throw std::invalid_argument("Polytope: no generators");
    dim_ = gens_.front().size();
    for (const auto& g : gens_)
      if (g.size() != dim_)
        throw std::invalid_argument("Polytope: generator dimension mismatch");
    if (dim_ == 1) canonicalize_1d();
  }

  static Polytope singleton(double v) {
    return Polytope(std::vector<std::vector<double>>{{v}});
  }

  static Polytope from_interval(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) return singleton(lo);
    return Polytope({{lo}, {hi}});
  }

  static Polytope from_interval(const Interval& iv) {
    return from_interval(iv.lo, iv.hi);
  }

  std::size_t dimension() const { return dim_; }
  const std::vector<std::vector<double>>& generators() const { return gens_; }

  Interval interval() const {
    require_1d();
    return {gens_.front()[0], gens_.back()[0]};
  }

  // Support function: max over generators of xi . d (the hull maximum is
  // attained at a generator).
  double support(const std::vector<double>& d) const {
    if (d.size() != dim_)
      throw std::invalid_argument("Polytope::support: dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : gens_) {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) dot += g[i] * d[i];
      best = std::max(best, dot);
    }
    return best;
  }

  double support(double d) const {
    require_1d();
    return support(std::vector<double>{d});
  }

  Polytope scaled(double c) const {
    auto gens = gens_;
    for (auto& g : gens)
      for (auto& v : g) v *= c;
    return Polytope(std::move(gens));
  }

  // Minkowski sum; in 1-D this is the exact interval sum.
  Polytope operator+(const Polytope& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("Polytope: dim mismatch");
    std::vector<std::vector<double>> sums;
    for (const auto& a : gens_)
      for (const auto& b : o.gens_) {
        std::vector<double> s(dim_);
        for (std::size_t i = 0; i < dim_; ++i) s[i] = a[i] + b[i];
        sums.push_back(std::move(s));
      }
    return Polytope(std::move(sums));
  }

 private:
  void require_1d() const {
    if (gens_.empty()) throw std::logic_error("Polytope: empty generator set");
    if (dim_ != 1) throw std::logic_error("Polytope: expected dimension 1");
  }

  void canonicalize_1d() {
    double lo = gens_.front()[0], hi = lo;
    for (const auto& g : gens_) {
      lo = std::min(lo, g[0]);
      hi = std::max(hi, g[0]);
    }
    gens_.clear();
    gens_.push_back({lo});
    if (hi > lo) gens_.push_back({hi});
  }

  std::vector<std::vector<double>> gens_;
  std::size_t dim_ = 1;
};

// Generalized directional derivative of the hull: max_{xi in P} xi . d.
inline double directional_derivative(const Polytope& p,
                                     const std::vector<double>& d) {
  return p.support(d);
}

inline double directional_derivative(const Polytope& p, double d) {
  return p.support(d);
}

}  // namespace invex

#endif  // INVEX_POLYTOPE_HPP_
