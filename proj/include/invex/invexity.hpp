#ifndef INVEX_INVEXITY_HPP_
#define INVEX_INVEXITY_HPP_

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invex/expr.hpp"
#include "invex/piecewise.hpp"
#include "invex/polytope.hpp"
#include "invex/subdiff.hpp"
#include "invex/verdict.hpp"

namespace invex {

// A map of (x, u), declared as an expression or supplied as a callable.
class ScalarMap {
 public:
  ScalarMap() = default;

  static ScalarMap from_expr(const ExprFn& e, std::string label = "") {
    ScalarMap m;
    ExprFn copy = e;
    m.fn_ = [copy](double x, double u) {
      return copy.eval(Env{{"x", x}, {"u", u}});
    };
    m.label_ = label.empty() ? e.to_string() : std::move(label);
    return m;
  }

  static ScalarMap parse(const std::string& text) {
    return from_expr(ExprFn::parse(text, {"x", "u"}), text);
  }

  static ScalarMap from_fn(std::function<double(double, double)> f,
                           std::string label) {
    ScalarMap m;
    m.fn_ = std::move(f);
    m.label_ = std::move(label);
    return m;
  }

  static ScalarMap constant(double v) {
    return from_fn([v](double, double) { return v; }, detail::fmt_num(v));
  }

  bool valid() const { return static_cast<bool>(fn_); }
  double operator()(double x, double u) const { return fn_(x, u); }
  const std::string& label() const { return label_; }

 private:
  std::function<double(double, double)> fn_;
  std::string label_;
};

using EtaMap = ScalarMap;

// Per-component positive scaling maps for the vector-valued properties.
struct BetaVector {
  std::vector<ScalarMap> components;

  static BetaVector ones(std::size_t p) {
    BetaVector b;
    for (std::size_t i = 0; i < p; ++i) b.components.push_back(ScalarMap::constant(1.0));
    return b;
  }

  double eval(std::size_t i, double x, double u) const {
    double v = components.at(i)(x, u);
    if (!(v > 0.0))
      throw ModelError("beta_" + std::to_string(i + 1) + " = " +
                       std::to_string(v) + " is not positive at (x=" +
                       std::to_string(x) + ", u=" + std::to_string(u) + ")");
    return v;
  }
};

enum class ScalarProperty { Invex, Pseudoinvex, Quasiinvex };
enum class VectorProperty { VInvex, VPseudoinvex, VQuasiinvex };

inline const char* to_string(ScalarProperty p) {
  switch (p) {
    case ScalarProperty::Invex: return "invex";
    case ScalarProperty::Pseudoinvex: return "pseudoinvex";
    case ScalarProperty::Quasiinvex: return "quasiinvex";
  }
  return "?";
}

inline const char* to_string(VectorProperty p) {
  switch (p) {
    case VectorProperty::VInvex: return "v_invex";
    case VectorProperty::VPseudoinvex: return "v_pseudoinvex";
    case VectorProperty::VQuasiinvex: return "v_quasiinvex";
  }
  return "?";
}

// Ordered (x, u) sample pairs. Kept sorted so witness order is lexicographic.
struct PairGrid {
  std::vector<std::pair<double, double>> pairs;

  static std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
      g[i] = n == 1 ? a
                    : a + (b - a) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    return g;
  }

  static PairGrid square(const std::vector<double>& grid) {
    return product(grid, grid);
  }

  static PairGrid product(const std::vector<double>& xs,
                          const std::vector<double>& us) {
    PairGrid g;
    g.pairs.reserve(xs.size() * us.size());
    for (double x : xs)
      for (double u : us) g.pairs.emplace_back(x, u);
    return g;
  }

  static PairGrid fixed_u(const std::vector<double>& xs, double u) {
    PairGrid g;
    g.pairs.reserve(xs.size());
    for (double x : xs) g.pairs.emplace_back(x, u);
    return g;
  }
};

// Knobs shared by the certification sweeps.
struct CertifyOptions {
  double eps = 1e-9;
  // Replaces the exact subdifferential at matching u values (declared
  // generator overrides for functions outside the exact 1-D reach).
  std::function<std::optional<Interval>(double u)> subdiff_override;
  // Evaluate the pseudoinvexity premise at the subdifferential minimum (the
  // literal exists-a-subgradient reading) instead of the directional
  // derivative envelope.
  bool existential = false;
};

namespace detail_cert {

// Subdifferentials are queried repeatedly at the same u values; cache them.
class SubdiffCache {
 public:
  SubdiffCache(const PiecewiseFn& f, const CertifyOptions* opts)
      : f_(f), opts_(opts) {}

  const Interval& at(double u) {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    if (opts_ && opts_->subdiff_override) {
      if (auto iv = opts_->subdiff_override(u))
        return cache_.emplace(u, *iv).first->second;
    }
    Interval iv = clarke_subdiff_1d(f_, u).interval();
    return cache_.emplace(u, iv).first->second;
  }

 private:
  const PiecewiseFn& f_;
  const CertifyOptions* opts_;
  std::map<double, Interval> cache_;
};

inline double envelope(const Interval& subdiff, double d) {
  // Generalized directional derivative of the hull: max of xi*d.
  return std::max(subdiff.lo * d, subdiff.hi * d);
}

}  // namespace detail_cert

// Certify a scalar generalized-invexity property of f against eta over the
// sampled pairs. The existential subgradient in the pseudoinvexity definition
// is evaluated through its stated equivalent form via the generalized
// directional derivative, which makes the test deterministic.
inline Verdict certify_scalar(ScalarProperty property, const PiecewiseFn& f,
                              const ScalarMap& eta, const PairGrid& pairs,
                              const CertifyOptions& opts) {
  const double eps = opts.eps;
  Verdict v;
  v.eps = eps;
  detail_cert::SubdiffCache subdiff(f, &opts);
  std::map<double, double> fcache;
  auto fval = [&](double t) {
    auto it = fcache.find(t);
    if (it != fcache.end()) return it->second;
    return fcache.emplace(t, f.value(t)).first->second;
  };
  for (const auto& [x, u] : pairs.pairs) {
    ++v.checked_pairs;
    double e;
    try {
      e = eta(x, u);
    } catch (const std::exception& ex) {
      throw ModelError("eta evaluation failed at (x=" + std::to_string(x) +
                       ", u=" + std::to_string(u) + "): " + ex.what());
    }
    const Interval& sd = subdiff.at(u);
    double fx = fval(x), fu = fval(u);
    switch (property) {
      case ScalarProperty::Invex: {
        // f(x) - f(u) >= xi * eta for every generator; the worst case is the
        // envelope maximum.
        double worst = detail_cert::envelope(sd, e);
        if (fx - fu < worst - eps) {
          double xi = sd.lo * e >= sd.hi * e ? sd.lo : sd.hi;
          v.witnesses.push_back({x, u, xi, fx - fu, worst, "invex inequality"});
        }
        break;
      }
      case ScalarProperty::Pseudoinvex: {
        if (e == 0.0 && sd.lo == 0.0 && sd.hi == 0.0) {
          ++v.vacuous_pairs;
          break;
        }
        double dd = opts.existential ? std::min(sd.lo * e, sd.hi * e)
                                     : detail_cert::envelope(sd, e);
        if (dd >= -eps && fx < fu - eps) {
          v.witnesses.push_back(
              {x, u, dd, fx, fu, "pseudoinvex implication (premise max xi*eta >= 0)"});
        }
        break;
      }
      case ScalarProperty::Quasiinvex: {
        if (e == 0.0 && sd.lo == 0.0 && sd.hi == 0.0) {
          ++v.vacuous_pairs;
          break;
        }
        double dd = detail_cert::envelope(sd, e);
        if (fx <= fu + eps && dd > eps) {
          v.witnesses.push_back(
              {x, u, dd, fx, fu, "quasiinvex implication (conclusion max xi*eta <= 0)"});
        }
        break;
      }
    }
  }
  v.passed = v.witnesses.empty();
  return v;
}

inline Verdict certify_scalar(ScalarProperty property, const PiecewiseFn& f,
                              const ScalarMap& eta, const PairGrid& pairs,
                              double eps = 1e-9) {
  CertifyOptions opts;
  opts.eps = eps;
  return certify_scalar(property, f, eta, pairs, opts);
}

// Certify a vector-valued property of F = (f_1..f_p) against shared eta and
// positive scalings beta. Existential subgradient selections are evaluated at
// the envelope maximum (the sum of per-component hull maxima), which is the
// exact supremum over independent per-component selections.
inline Verdict certify_vector(VectorProperty property,
                              const std::vector<PiecewiseFn>& F,
                              const ScalarMap& eta, const BetaVector& beta,
                              const PairGrid& pairs, const CertifyOptions& opts) {
  if (beta.components.size() != F.size())
    throw ModelError("beta has " + std::to_string(beta.components.size()) +
                     " components for " + std::to_string(F.size()) + " functions");
  const double eps = opts.eps;
  Verdict v;
  v.eps = eps;
  std::vector<detail_cert::SubdiffCache> subdiffs;
  subdiffs.reserve(F.size());
  for (const auto& f : F) subdiffs.emplace_back(f, &opts);
  for (const auto& [x, u] : pairs.pairs) {
    ++v.checked_pairs;
    double e;
    try {
      e = eta(x, u);
    } catch (const std::exception& ex) {
      throw ModelError("eta evaluation failed at (x=" + std::to_string(x) +
                       ", u=" + std::to_string(u) + "): " + ex.what());
    }
    switch (property) {
      case VectorProperty::VInvex: {
        for (std::size_t i = 0; i < F.size(); ++i) {
          double bi = beta.eval(i, x, u);
          const Interval& sd = subdiffs[i].at(u);
          double lhs = F[i].value(x) - F[i].value(u);
          double worst = detail_cert::envelope(sd, bi * e);
          if (lhs < worst - eps) {
            double xi = sd.lo * e >= sd.hi * e ? sd.lo : sd.hi;
            v.witnesses.push_back({x, u, xi, lhs, worst,
                                   "v_invex component " + std::to_string(i + 1)});
          }
        }
        break;
      }
      case VectorProperty::VPseudoinvex: {
        double env_sum = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) {
          const Interval& sd = subdiffs[i].at(u);
          env_sum += opts.existential ? std::min(sd.lo * e, sd.hi * e)
                                      : detail_cert::envelope(sd, e);
        }
        if (env_sum >= -eps) {
          double scaled = 0.0;
          for (std::size_t i = 0; i < F.size(); ++i)
            scaled += beta.eval(i, x, u) * (F[i].value(x) - F[i].value(u));
          if (scaled < -eps) {
            v.witnesses.push_back({x, u, env_sum, scaled, 0.0,
                                   "v_pseudoinvex implication (premise sum max xi*eta >= 0)"});
          }
        }
        break;
      }
      case VectorProperty::VQuasiinvex: {
        double scaled = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i)
          scaled += beta.eval(i, x, u) * (F[i].value(x) - F[i].value(u));
        if (scaled <= eps) {
          double env_sum = 0.0;
          for (std::size_t i = 0; i < F.size(); ++i)
            env_sum += detail_cert::envelope(subdiffs[i].at(u), e);
          if (env_sum > eps) {
            v.witnesses.push_back({x, u, env_sum, scaled, env_sum,
                                   "v_quasiinvex implication (conclusion sum xi*eta <= 0)"});
          }
        }
        break;
      }
    }
  }
  v.passed = v.witnesses.empty();
  return v;
}

inline Verdict certify_vector(VectorProperty property,
                              const std::vector<PiecewiseFn>& F,
                              const ScalarMap& eta, const BetaVector& beta,
                              const PairGrid& pairs, double eps = 1e-9) {
  CertifyOptions opts;
  opts.eps = eps;
  return certify_vector(property, F, eta, beta, pairs, opts);
}

// Canonical beta reconstruction used to confirm that componentwise
// pseudoinvex families are V-invex: the ratio of the achieved gap to the
// envelope slope where well-defined and positive, 1 elsewhere.
inline BetaVector reconstruct_beta(const std::vector<PiecewiseFn>& F,
                                   const ScalarMap& eta) {
  BetaVector beta;
  for (const auto& f : F) {
    const PiecewiseFn* fp = &f;
    ScalarMap eta_copy = eta;
    beta.components.push_back(ScalarMap::from_fn(
        [fp, eta_copy](double x, double u) {
          double gap = fp->value(x) - fp->value(u);
          if (gap == 0.0) return 1.0;
          double slope =
              detail_cert::envelope(clarke_subdiff_1d(*fp, u).interval(),
                                    eta_copy(x, u));
          if (std::fabs(slope) < 1e-12) return 1.0;
          double ratio = gap / slope;
          return ratio > 0.0 ? ratio : 1.0;
        },
        "ratio"));
  }
  return beta;
}

}  // namespace invex

#endif  // INVEX_INVEXITY_HPP_
