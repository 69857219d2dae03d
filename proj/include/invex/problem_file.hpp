#ifndef INVEX_PROBLEM_FILE_HPP_
#define INVEX_PROBLEM_FILE_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invex/fop.hpp"
#include "invex/fuzzy.hpp"
#include "invex/invexity.hpp"

namespace invex {

// All diagnostics for a problem file, aggregated before reporting.
struct ProblemFileError : std::runtime_error {
  std::vector<std::string> diagnostics;

  explicit ProblemFileError(std::vector<std::string> diags)
      : std::runtime_error(join(diags)), diagnostics(std::move(diags)) {}

  static std::string join(const std::vector<std::string>& diags) {
    std::string out = "problem file has " + std::to_string(diags.size()) +
                      " error(s):";
    for (const auto& d : diags) out += "\n  " + d;
    return out;
  }
};

// A parsed problem file: the FOP itself plus declared maps, multiplier hints
// and command defaults.
struct ProblemFile {
  std::optional<FOPSpec> fop;
  std::map<std::string, FuzzyNumber> fuzzy_numbers;
  std::vector<std::pair<std::string, PiecewiseFn>> functions;
  std::string objective_coefficient, objective_shape, objective_subtrahend;
  std::vector<std::string> ineq_names, eq_names;
  std::optional<ScalarMap> eta;
  std::optional<BetaVector> beta_objective, beta_ineq, beta_eq;
  std::optional<std::pair<double, double>> lambda;
  std::optional<std::vector<double>> mu;
  std::optional<std::vector<double>> theta;
  std::optional<double> point;
  std::optional<TheoremRule> rule;
  // Declared subdifferential overrides: name -> (point, generators).
  std::map<std::string, std::vector<std::pair<double, std::vector<double>>>>
      generator_overrides;
  std::string source_text;

  const FOPSpec& spec() const {
    if (!fop) throw ModelError("problem file: no objective assembled");
    return *fop;
  }

  const PiecewiseFn* find_function(const std::string& name) const {
    for (const auto& [n, f] : functions)
      if (n == name) return &f;
    return nullptr;
  }
};

namespace detail_pf {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Grid syntax a:b:step, inclusive of both ends with 1e-12 final-point
// snapping; a bare number is a one-point grid.
inline std::vector<double> parse_grid(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() == 1) return {std::stod(parts[0])};
  if (parts.size() != 3) throw std::invalid_argument("grid must be a:b:step");
  double a = std::stod(parts[0]);
  double b = std::stod(parts[1]);
  double step = std::stod(parts[2]);
  if (!(step > 0.0) || b < a) throw std::invalid_argument("grid requires a <= b, step > 0");
  std::vector<double> g;
  for (std::size_t i = 0;; ++i) {
    double v = a + step * static_cast<double>(i);
    if (v > b + 1e-12) break;
    if (std::fabs(v - b) <= 1e-12) v = b;
    g.push_back(v);
    if (v == b) break;
  }
  if (g.empty() || g.back() != b) g.push_back(b);
  return g;
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ','))
    out.push_back(std::stod(part));
  return out;
}

inline std::vector<std::pair<double, double>> parse_knots(const std::string& text,
                                                          int line) {
  // knots[(x,mu), (x,mu), ...]
  std::string t = trim(text);
  if (t.rfind("knots[", 0) != 0 || t.back() != ']')
    throw ExprError("fuzzy literal must be knots[(x,mu), ...]", line, 1);
  t = t.substr(6, t.size() - 7);
  std::vector<std::pair<double, double>> knots;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t open = t.find('(', pos);
    if (open == std::string::npos) break;
    std::size_t close = t.find(')', open);
    if (close == std::string::npos)
      throw ExprError("unbalanced knot pair", line, static_cast<int>(open) + 1);
    auto pair = split(t.substr(open + 1, close - open - 1), ',');
    if (pair.size() != 2)
      throw ExprError("knot pair needs two numbers", line, static_cast<int>(open) + 1);
    knots.emplace_back(std::stod(pair[0]), std::stod(pair[1]));
    pos = close + 1;
  }
  return knots;
}

inline BetaVector parse_beta_list(const std::string& text) {
  BetaVector beta;
  for (const auto& part : split(text, ';')) {
    ExprFn e = ExprFn::parse(part, {"x", "u"});
    beta.components.push_back(ScalarMap::from_expr(e, part));
  }
  return beta;
}

}  // namespace detail_pf

// Parse a problem file from text. Every declaration is validated eagerly and
// all diagnostics are reported together.
inline ProblemFile parse_problem_text(const std::string& text,
                                      const std::string& origin = "<string>") {
  using detail_pf::split;
  using detail_pf::trim;
  ProblemFile pf;
  pf.source_text = text;
  std::vector<std::string> diags;
  auto fail = [&diags, &origin](int line, const std::string& msg) {
    diags.push_back(origin + ":" + std::to_string(line) + ": " + msg);
  };

  std::optional<Interval> domain;
  std::vector<double> xgrid, agrid;
  // Names whose declarations already failed: suppress follow-on unresolved-
  // reference diagnostics for them.
  std::vector<std::string> broken;
  struct PendingFn {
    std::string name, body;
    std::optional<Interval> dom;
    int line;
  };
  std::vector<PendingFn> pending_fns;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.rfind("fuzzy ", 0) == 0) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("missing '='");
        std::string name = trim(line.substr(6, eq - 6));
        if (pf.fuzzy_numbers.count(name))
          throw std::invalid_argument("duplicate fuzzy number '" + name + "'");
        try {
          pf.fuzzy_numbers.emplace(
              name, FuzzyNumber(detail_pf::parse_knots(line.substr(eq + 1), lineno)));
        } catch (...) {
          broken.push_back(name);
          throw;
        }
      } else if (line.rfind("fn ", 0) == 0) {
        auto eq = line.find('=');
        auto paren = line.find('(');
        if (eq == std::string::npos || paren == std::string::npos || paren > eq)
          throw std::invalid_argument("expected fn <name>(x) = <expr>");
        std::string name = trim(line.substr(3, paren - 3));
        std::string body = trim(line.substr(eq + 1));
        std::optional<Interval> dom;
        if (auto on = body.rfind(" on ["); on != std::string::npos && body.back() == ']') {
          auto bounds = split(body.substr(on + 5, body.size() - on - 6), ',');
          if (bounds.size() != 2) throw std::invalid_argument("domain must be [a, b]");
          dom = Interval{std::stod(bounds[0]), std::stod(bounds[1])};
          body = trim(body.substr(0, on));
        }
        for (const auto& p : pending_fns)
          if (p.name == name)
            throw std::invalid_argument("duplicate function '" + name + "'");
        pending_fns.push_back({name, body, dom, lineno});
      } else if (line.rfind("constraint_eq ", 0) == 0) {
        auto parts = split(line.substr(14), '=');
        pf.eq_names.push_back(trim(parts[0]));
      } else if (line.rfind("constraint ", 0) == 0) {
        std::string rest = trim(line.substr(11));
        if (auto le = rest.find("<="); le != std::string::npos)
          rest = trim(rest.substr(0, le));
        pf.ineq_names.push_back(rest);
      } else if (line.rfind("objective", 0) == 0) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("missing '='");
        std::string rhs = trim(line.substr(eq + 1));
        auto star = rhs.find('*');
        if (star == std::string::npos)
          throw std::invalid_argument("objective must be <fuzzy> * <fn> [- <sub>]");
        pf.objective_coefficient = trim(rhs.substr(0, star));
        std::string tail = trim(rhs.substr(star + 1));
        if (auto minus = tail.find(" - "); minus != std::string::npos) {
          pf.objective_shape = trim(tail.substr(0, minus));
          pf.objective_subtrahend = trim(tail.substr(minus + 3));
        } else {
          pf.objective_shape = tail;
        }
      } else if (line.rfind("domain", 0) == 0) {
        auto eq = line.find('=');
        std::string rhs = trim(line.substr(eq + 1));
        if (rhs.front() != '[' || rhs.back() != ']')
          throw std::invalid_argument("domain must be [a, b]");
        auto bounds = split(rhs.substr(1, rhs.size() - 2), ',');
        domain = Interval{std::stod(bounds[0]), std::stod(bounds[1])};
      } else if (line.rfind("xgrid", 0) == 0) {
        xgrid = detail_pf::parse_grid(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("alphagrid", 0) == 0) {
        agrid = detail_pf::parse_grid(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("eta", 0) == 0) {
        auto eq = line.find('=');
        std::string body = trim(line.substr(eq + 1));
        pf.eta = ScalarMap::from_expr(ExprFn::parse(body, {"x", "u"}), body);
      } else if (line.rfind("beta_obj", 0) == 0) {
        pf.beta_objective = detail_pf::parse_beta_list(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("beta_g", 0) == 0) {
        pf.beta_ineq = detail_pf::parse_beta_list(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("beta_h", 0) == 0) {
        pf.beta_eq = detail_pf::parse_beta_list(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("lambda", 0) == 0) {
        auto vals = detail_pf::parse_number_list(trim(line.substr(line.find('=') + 1)));
        if (vals.size() != 2) throw std::invalid_argument("lambda needs two values");
        pf.lambda = {vals[0], vals[1]};
      } else if (line.rfind("mu", 0) == 0) {
        pf.mu = detail_pf::parse_number_list(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("theta", 0) == 0) {
        pf.theta = detail_pf::parse_number_list(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("point", 0) == 0) {
        pf.point = std::stod(trim(line.substr(line.find('=') + 1)));
      } else if (line.rfind("rule", 0) == 0) {
        std::string name = trim(line.substr(line.find('=') + 1));
        pf.rule = theorem_rule_from_string(name);
        if (!pf.rule) throw std::invalid_argument("unknown rule '" + name + "'");
      } else if (line.rfind("generators ", 0) == 0) {
        // generators <name>(<x0>) = { v1, v2, ... }
        auto paren = line.find('(');
        auto close = line.find(')');
        auto brace = line.find('{');
        auto brace2 = line.find('}');
        if (paren == std::string::npos || close == std::string::npos ||
            brace == std::string::npos || brace2 == std::string::npos)
          throw std::invalid_argument("expected generators <fn>(<x>) = { ... }");
        std::string name = trim(line.substr(11, paren - 11));
        double at = std::stod(line.substr(paren + 1, close - paren - 1));
        auto vals = detail_pf::parse_number_list(line.substr(brace + 1, brace2 - brace - 1));
        if (vals.empty()) throw std::invalid_argument("generator override needs values");
        pf.generator_overrides[name].emplace_back(at, vals);
      } else {
        throw std::invalid_argument("unrecognized declaration");
      }
    } catch (const std::exception& ex) {
      fail(lineno, ex.what());
    }
  }

  Interval dom = domain.value_or(Interval{0.0, 1.0});
  if (!domain) diags.push_back(origin + ": missing domain declaration");
  // Functions default to the problem domain when no explicit one is given.
  for (const auto& p : pending_fns) {
    try {
      pf.functions.emplace_back(p.name,
                                PiecewiseFn::parse(p.body, p.dom.value_or(dom), p.name));
    } catch (const std::exception& ex) {
      broken.push_back(p.name);
      fail(p.line, std::string("fn ") + p.name + ": " + ex.what());
    }
  }

  auto is_broken = [&broken](const std::string& name) {
    for (const auto& b : broken)
      if (b == name) return true;
    return false;
  };
  auto resolve_fn = [&](const std::string& name, const char* what) -> const PiecewiseFn* {
    const PiecewiseFn* f = pf.find_function(name);
    if (!f && !is_broken(name))
      diags.push_back(origin + ": " + what + " references undefined function '" + name + "'");
    return f;
  };

  std::optional<FuzzyObjective> objective;
  if (pf.objective_coefficient.empty()) {
    diags.push_back(origin + ": missing objective declaration");
  } else {
    auto coef = pf.fuzzy_numbers.find(pf.objective_coefficient);
    if (coef == pf.fuzzy_numbers.end() && !is_broken(pf.objective_coefficient))
      diags.push_back(origin + ": objective references undefined fuzzy number '" +
                      pf.objective_coefficient + "'");
    const PiecewiseFn* shape = resolve_fn(pf.objective_shape, "objective shape");
    FuzzyObjective::Subtrahend sub = 0.0;
    if (!pf.objective_subtrahend.empty()) {
      auto fz = pf.fuzzy_numbers.find(pf.objective_subtrahend);
      if (fz != pf.fuzzy_numbers.end()) {
        sub = fz->second;
      } else {
        try {
          sub = std::stod(pf.objective_subtrahend);
        } catch (...) {
          diags.push_back(origin + ": objective subtrahend '" + pf.objective_subtrahend +
                          "' is neither a fuzzy number nor a constant");
        }
      }
    }
    if (coef != pf.fuzzy_numbers.end() && shape)
      objective.emplace(coef->second, *shape, std::move(sub));
  }

  std::vector<PiecewiseFn> gs, hs;
  for (const auto& n : pf.ineq_names)
    if (const PiecewiseFn* f = resolve_fn(n, "constraint")) gs.push_back(*f);
  for (const auto& n : pf.eq_names)
    if (const PiecewiseFn* f = resolve_fn(n, "constraint_eq")) hs.push_back(*f);

  if (xgrid.empty()) {
    for (std::size_t i = 0; i <= 100; ++i)
      xgrid.push_back(dom.lo + (dom.hi - dom.lo) * static_cast<double>(i) / 100.0);
  }
  if (agrid.empty()) agrid = detail_pf::parse_grid("0:1:0.05");
  std::sort(agrid.begin(), agrid.end());
  agrid.erase(std::unique(agrid.begin(), agrid.end()), agrid.end());
  for (double a : agrid)
    if (a < 0.0 || a > 1.0) {
      diags.push_back(origin + ": alphagrid value " + std::to_string(a) + " outside [0, 1]");
      break;
    }

  if (!diags.empty()) throw ProblemFileError(std::move(diags));
  std::vector<SubdiffOverride> overrides;
  for (const auto& [name, list] : pf.generator_overrides)
    for (const auto& [at, gens] : list) overrides.push_back({name, at, gens});
  pf.fop = FOPSpec{std::move(*objective), std::move(gs), std::move(hs), dom,
                   std::move(xgrid),      std::move(agrid), std::move(overrides)};
  return pf;
}

inline ProblemFile parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFileError({path + ": cannot open file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str(), path);
}

}  // namespace invex

#endif  // INVEX_PROBLEM_FILE_HPP_
