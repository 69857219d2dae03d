// invexcheck: batch verification of nonsmooth fuzzy-valued programs.
// Subcommands map one-to-one onto the library operations; every run emits a
// structured JSON report and an exit code (0 pass/feasible, 1 fail/infeasible,
// 2 usage or model error).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invex/fixtures.hpp"
#include "invex/fop.hpp"
#include "invex/problem_file.hpp"
#include "invex/report.hpp"

namespace {

using invex::Json;

struct CommonOpts {
  std::string out;
  bool no_timings = false;
};

int emit(const Json& report, const CommonOpts& common, int exit_code,
         const invex::Stopwatch& watch) {
  Json j = report;
  if (!common.no_timings) j["timings"] = Json{{"seconds", watch.seconds()}};
  std::string text = j.dump(2);
  if (common.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(common.out);
    f << text << "\n";
  }
  return exit_code;
}

std::vector<double> parse_grid_arg(const std::string& s) {
  return invex::detail_pf::parse_grid(s);
}

std::vector<double> parse_list_arg(const std::string& s) {
  return invex::detail_pf::parse_number_list(s);
}

invex::MultiplierSet resolve_multipliers(const invex::ProblemFile& pf,
                                         const std::string& lambda_arg,
                                         const std::string& mu_arg,
                                         const std::string& theta_arg) {
  invex::MultiplierSet m;
  auto lambda = pf.lambda;
  if (!lambda_arg.empty()) {
    auto v = parse_list_arg(lambda_arg);
    if (v.size() != 2) throw std::invalid_argument("--lambda needs two values");
    lambda = {v[0], v[1]};
  }
  if (!lambda) throw std::invalid_argument("no lambda given (flag or problem file)");
  m.lambda1 = lambda->first;
  m.lambda2 = lambda->second;
  auto mu = pf.mu;
  if (!mu_arg.empty()) mu = parse_list_arg(mu_arg);
  m.mu = mu.value_or(std::vector<double>{});
  auto theta = pf.theta;
  if (!theta_arg.empty()) theta = parse_list_arg(theta_arg);
  m.theta = theta.value_or(std::vector<double>{});
  const auto& fop = pf.spec();
  if (m.mu.size() != fop.constraints_ineq.size())
    throw std::invalid_argument("mu must list one value per inequality constraint");
  if (m.theta.size() != fop.constraints_eq.size())
    throw std::invalid_argument("theta must list one value per equality constraint");
  return m;
}

double resolve_point(const invex::ProblemFile& pf, const std::optional<double>& flag) {
  if (flag) return *flag;
  if (pf.point) return *pf.point;
  throw std::invalid_argument("no candidate point given (--point or problem file)");
}

Json inputs_block(const std::string& command, const std::string& canonical,
                  Json echo) {
  Json j;
  j["digest"] = invex::input_digest(command + "\n" + canonical);
  j["echo"] = std::move(echo);
  return j;
}

// Note attached wherever the fuzzy subtraction matters: the endpoint formulas
// subtract crosswise, which differs from the width-preserving Hukuhara
// difference whenever the subtrahend cut is a genuine interval.
std::optional<std::string> subtraction_note(const invex::FOPSpec& fop) {
  for (double a : fop.alpha_grid) {
    invex::Interval sub = fop.objective.subtrahend_cut(a);
    if (sub.width() > 0.0)
      return "endpoint formulas use cross subtraction; the width-preserving "
             "Hukuhara reading differs at levels where the subtrahend cut has "
             "positive width";
  }
  return std::nullopt;
}

int cmd_check_kkt(const invex::ProblemFile& pf, double point,
                  const invex::MultiplierSet& m, const std::vector<double>& alphas,
                  double tol, const CommonOpts& common, const invex::Stopwatch& watch,
                  const std::string& canonical) {
  const auto& fop = pf.spec();
  invex::TheoremPipeline input;
  input.multipliers = m;
  input.tol = tol;
  Json table = Json::array();
  bool all_ok = true;
  for (double a : alphas) {
    auto rep = invex::kkt_at_level(fop, point, a, input);
    all_ok = all_ok && rep.feasible;
    Json row = invex::to_json(rep);
    row["alpha"] = a;
    table.push_back(std::move(row));
  }
  Json j;
  j["command"] = "check-kkt";
  j["inputs"] = inputs_block("check-kkt", canonical,
                             Json{{"point", point},
                                  {"lambda", {m.lambda1, m.lambda2}},
                                  {"mu", m.mu},
                                  {"theta", m.theta}});
  j["results"] = Json{{"per_level", std::move(table)}, {"feasible_all", all_ok}};
  return emit(j, common, all_ok ? 0 : 1, watch);
}

int cmd_solve_kkt(const invex::ProblemFile& pf, double point,
                  invex::LambdaMode mode, std::pair<double, double> fixed,
                  const std::vector<double>& alphas, double tol,
                  const CommonOpts& common, const invex::Stopwatch& watch,
                  const std::string& canonical) {
  const auto& fop = pf.spec();
  invex::TheoremPipeline input;
  input.lambda_mode = mode;
  input.fixed_lambda1 = fixed.first;
  input.fixed_lambda2 = fixed.second;
  input.tol = tol;
  Json table = Json::array();
  bool all_ok = true;
  for (double a : alphas) {
    auto rep = invex::kkt_at_level(fop, point, a, input);
    all_ok = all_ok && rep.feasible;
    Json row = invex::to_json(rep);
    row["alpha"] = a;
    table.push_back(std::move(row));
  }
  Json j;
  j["command"] = "solve-kkt";
  j["inputs"] = inputs_block("solve-kkt", canonical,
                             Json{{"point", point},
                                  {"lambda_mode", mode == invex::LambdaMode::Normalized
                                                      ? "normalized"
                                                      : "fixed"}});
  j["results"] = Json{{"per_level", std::move(table)}, {"feasible_all", all_ok}};
  return emit(j, common, all_ok ? 0 : 1, watch);
}

int cmd_certify(const std::vector<std::string>& fn_texts, const std::string& property,
                const std::string& eta_text, const std::string& beta_text,
                const std::string& grid_spec, std::optional<double> point,
                double eps, bool dual_reading, const CommonOpts& common,
                const invex::Stopwatch& watch, const std::string& canonical) {
  auto grid = parse_grid_arg(grid_spec);
  invex::Interval domain{grid.front(), grid.back()};
  std::vector<invex::PiecewiseFn> fns;
  for (const auto& t : fn_texts)
    fns.push_back(invex::PiecewiseFn::parse(t, domain));
  invex::ScalarMap eta = invex::ScalarMap::parse(eta_text);
  invex::PairGrid pairs = point ? invex::PairGrid::fixed_u(grid, *point)
                                : invex::PairGrid::square(grid);

  Json results = Json::array();
  bool all_pass = true;
  auto run_one = [&](const std::string& name, const invex::Verdict& v) {
    Json r = invex::to_json(v);
    r["name"] = name;
    results.push_back(std::move(r));
    all_pass = all_pass && v.passed;
  };
  invex::CertifyOptions opts;
  opts.eps = eps;

  bool is_vector = property.rfind("v_", 0) == 0;
  if (is_vector) {
    invex::VectorProperty vp;
    if (property == "v_invex") vp = invex::VectorProperty::VInvex;
    else if (property == "v_pseudoinvex") vp = invex::VectorProperty::VPseudoinvex;
    else if (property == "v_quasiinvex") vp = invex::VectorProperty::VQuasiinvex;
    else throw std::invalid_argument("unknown property '" + property + "'");
    invex::BetaVector beta = beta_text.empty()
                                 ? invex::BetaVector::ones(fns.size())
                                 : invex::detail_pf::parse_beta_list(beta_text);
    run_one(property, invex::certify_vector(vp, fns, eta, beta, pairs, opts));
    if (dual_reading && vp == invex::VectorProperty::VPseudoinvex) {
      auto existential = opts;
      existential.existential = true;
      run_one(property + " (existential reading)",
              invex::certify_vector(vp, fns, eta, beta, pairs, existential));
    }
  } else {
    invex::ScalarProperty sp;
    if (property == "invex") sp = invex::ScalarProperty::Invex;
    else if (property == "pseudoinvex") sp = invex::ScalarProperty::Pseudoinvex;
    else if (property == "quasiinvex") sp = invex::ScalarProperty::Quasiinvex;
    else throw std::invalid_argument("unknown property '" + property + "'");
    for (std::size_t i = 0; i < fns.size(); ++i) {
      std::string name = property + " fn" + std::to_string(i + 1);
      run_one(name, invex::certify_scalar(sp, fns[i], eta, pairs, opts));
      if (dual_reading && sp == invex::ScalarProperty::Pseudoinvex) {
        auto existential = opts;
        existential.existential = true;
        run_one(name + " (existential reading)",
                invex::certify_scalar(sp, fns[i], eta, pairs, existential));
      }
    }
  }
  Json j;
  j["command"] = "certify";
  j["inputs"] = inputs_block("certify", canonical,
                             Json{{"property", property},
                                  {"functions", fn_texts},
                                  {"eta", eta_text},
                                  {"grid", grid_spec}});
  j["results"] = std::move(results);
  return emit(j, common, all_pass ? 0 : 1, watch);
}

int cmd_pareto(const invex::ProblemFile& pf, const std::vector<double>& alphas,
               const std::string& mode_name, const std::string& lambda_arg,
               std::optional<double> point, std::optional<double> bound,
               const CommonOpts& common, const invex::Stopwatch& watch,
               const std::string& canonical) {
  const auto& fop = pf.spec();
  invex::DominanceMode mode = mode_name == "weak" ? invex::DominanceMode::Weak
                                                  : invex::DominanceMode::Pareto;
  std::optional<invex::WeightVector> w;
  if (!lambda_arg.empty()) w.emplace(parse_list_arg(lambda_arg));
  else if (pf.lambda) w.emplace(std::vector<double>{pf.lambda->first, pf.lambda->second});

  Json per_level = Json::array();
  bool audits_pass = true;
  for (double a : alphas) {
    invex::VMP vmp = invex::build_vmp(fop, a);
    auto front = invex::pareto_front(vmp, mode);
    Json row;
    row["alpha"] = a;
    row["front"] = front.points;
    row["empty_feasible"] = front.empty_feasible;
    if (w) {
      auto argmin = invex::weighted_argmin(vmp, *w);
      row["weighted_argmin"] = argmin.points;
      row["weighted_min"] = argmin.value;
      // Front points the given weights cannot recover (the necessity gap).
      std::vector<double> missed;
      for (double x : front.points)
        if (!std::count(argmin.points.begin(), argmin.points.end(), x))
          missed.push_back(x);
      row["front_points_not_recovered"] = missed;
    }
    if (point && bound) {
      auto audit = invex::geoffrion_audit(vmp, *point, *bound);
      row["geoffrion"] = Json{{"efficient", audit.efficient},
                              {"passed", audit.passed},
                              {"worst_ratio", audit.worst_ratio},
                              {"note", audit.note}};
      audits_pass = audits_pass && audit.efficient && audit.passed;
    }
    per_level.push_back(std::move(row));
  }
  Json j;
  j["command"] = "pareto";
  j["inputs"] = inputs_block("pareto", canonical,
                             Json{{"mode", mode_name}, {"levels", alphas.size()}});
  j["results"] = std::move(per_level);
  int code = (point && bound && !audits_pass) ? 1 : 0;
  return emit(j, common, code, watch);
}

int cmd_nondominance(const invex::ProblemFile& pf, double point,
                     const std::string& mode_name, const CommonOpts& common,
                     const invex::Stopwatch& watch, const std::string& canonical) {
  const auto& fop = pf.spec();
  invex::NondomMode mode = mode_name == "weak" ? invex::NondomMode::Weak
                                               : invex::NondomMode::Strict;
  auto verdict = invex::check_nondominated(fop, point, mode);
  Json j;
  j["command"] = "nondominance";
  j["inputs"] = inputs_block("nondominance", canonical,
                             Json{{"point", point}, {"mode", mode_name}});
  Json res = invex::to_json(verdict);
  if (auto note = subtraction_note(fop)) res["subtraction_note"] = *note;
  j["results"] = std::move(res);
  return emit(j, common, verdict.passed ? 0 : 1, watch);
}

int cmd_bridge(const invex::ProblemFile& pf, double point, const std::string& lambda_arg,
               const CommonOpts& common, const invex::Stopwatch& watch,
               const std::string& canonical) {
  const auto& fop = pf.spec();
  invex::WeightVector w =
      !lambda_arg.empty()
          ? invex::WeightVector(parse_list_arg(lambda_arg))
          : invex::WeightVector(pf.lambda
                                    ? std::vector<double>{pf.lambda->first, pf.lambda->second}
                                    : std::vector<double>{0.5, 0.5});
  auto rep = invex::bridge_check(fop, point, w);
  Json j;
  j["command"] = "bridge";
  j["inputs"] = inputs_block("bridge", canonical,
                             Json{{"point", point}, {"lambda", w.lambda}});
  j["results"] = invex::to_json(rep);
  return emit(j, common, rep.all_consistent() ? 0 : 1, watch);
}

invex::TheoremPipeline build_pipeline(const invex::ProblemFile& pf,
                                      const std::string& rule_arg,
                                      const std::string& lambda_arg,
                                      const std::string& mu_arg,
                                      const std::string& theta_arg,
                                      const std::string& alpha_arg, bool solve,
                                      double tol, double eps) {
  invex::TheoremPipeline input;
  std::optional<invex::TheoremRule> rule = pf.rule;
  if (!rule_arg.empty()) {
    rule = invex::theorem_rule_from_string(rule_arg);
    if (!rule) throw std::invalid_argument("unknown rule '" + rule_arg + "'");
  }
  if (!rule) throw std::invalid_argument("no rule given (--rule or problem file)");
  input.rule = *rule;
  if (!pf.eta) throw std::invalid_argument("problem file declares no eta map");
  input.eta = *pf.eta;
  input.beta_objective = pf.beta_objective;
  input.beta_ineq = pf.beta_ineq;
  input.beta_eq = pf.beta_eq;
  input.tol = tol;
  input.eps = eps;
  if (!alpha_arg.empty()) input.alphas = parse_grid_arg(alpha_arg);
  bool have_multipliers = (pf.lambda || !lambda_arg.empty()) &&
                          (pf.mu || !mu_arg.empty() ||
                           pf.spec().constraints_ineq.empty());
  if (!solve && have_multipliers) {
    input.multipliers = resolve_multipliers(pf, lambda_arg, mu_arg, theta_arg);
  } else if (pf.lambda || !lambda_arg.empty()) {
    auto l = pf.lambda;
    if (!lambda_arg.empty()) {
      auto v = parse_list_arg(lambda_arg);
      l = {v[0], v[1]};
    }
    input.lambda_mode = invex::LambdaMode::Fixed;
    input.fixed_lambda1 = l->first;
    input.fixed_lambda2 = l->second;
  }
  return input;
}

int cmd_theorem(const invex::ProblemFile& pf, double point,
                const invex::TheoremPipeline& input, const CommonOpts& common,
                const invex::Stopwatch& watch, const std::string& canonical) {
  const auto& fop = pf.spec();
  auto rep = invex::run_theorem(fop, point, input);
  Json j;
  j["command"] = "theorem";
  j["inputs"] = inputs_block("theorem", canonical,
                             Json{{"point", point}, {"rule", to_string(input.rule)}});
  j["results"] = invex::to_json(rep);
  bool ok = rep.hypotheses_passed && rep.oracle_agrees;
  return emit(j, common, ok ? 0 : 1, watch);
}

int cmd_run_example(const std::string& id, const CommonOpts& common,
                    const invex::Stopwatch& watch) {
  const char* text = invex::fixtures::example_text(id);
  if (!text) throw std::invalid_argument("unknown example '" + id + "' (ex1|ex2|ex3)");
  invex::ProblemFile pf = invex::parse_problem_text(text, id);
  const auto& fop = pf.spec();
  double point = *pf.point;

  invex::TheoremPipeline verify_input;
  verify_input.multipliers = resolve_multipliers(pf, "", "", "");
  Json kkt_table = Json::array();
  bool kkt_all = true;
  for (double a : fop.alpha_grid) {
    auto rep = invex::kkt_at_level(fop, point, a, verify_input);
    kkt_all = kkt_all && rep.feasible;
    Json row = invex::to_json(rep);
    row["alpha"] = a;
    invex::Interval cut = fop.objective.coefficient().alpha_cut(a);
    row["coefficient_cut"] = {cut.lo, cut.hi};
    kkt_table.push_back(std::move(row));
  }

  auto pipeline = build_pipeline(pf, "", "", "", "", "", /*solve=*/false, 1e-9, 1e-9);
  auto theorem_rep = invex::run_theorem(fop, point, pipeline);
  auto weak = invex::check_nondominated(fop, point, invex::NondomMode::Weak);
  auto strict = invex::check_nondominated(fop, point, invex::NondomMode::Strict);
  invex::WeightVector w(pf.lambda ? std::vector<double>{pf.lambda->first, pf.lambda->second}
                                  : std::vector<double>{0.5, 0.5});
  auto bridge = invex::bridge_check(fop, point, w);

  Json j;
  j["command"] = "run-example";
  j["inputs"] = inputs_block("run-example", text, Json{{"example", id}});
  Json res;
  res["kkt"] = Json{{"per_level", std::move(kkt_table)}, {"feasible_all", kkt_all}};
  res["theorem"] = invex::to_json(theorem_rep);
  res["nondominance_weak"] = invex::to_json(weak);
  res["nondominance_strict"] = invex::to_json(strict);
  res["bridge"] = invex::to_json(bridge);
  if (auto note = subtraction_note(fop)) res["subtraction_note"] = *note;
  j["results"] = std::move(res);
  bool ok = kkt_all && theorem_rep.hypotheses_passed && theorem_rep.oracle_agrees &&
            weak.passed && strict.passed && bridge.all_consistent();
  return emit(j, common, ok ? 0 : 1, watch);
}

}  // namespace

int main(int argc, char** argv) {
  invex::Stopwatch watch;
  CLI::App app{"verification toolkit for nonsmooth fuzzy-valued programs"};
  app.require_subcommand(1);
  app.fallthrough();  // --out / --no-timings may follow the subcommand

  CommonOpts common;
  std::string problem_path, alpha_arg, lambda_arg, mu_arg, theta_arg;
  std::string eta_arg, beta_arg, grid_arg, property_arg, rule_arg;
  std::string pareto_mode = "pareto", nondom_mode = "strict";
  std::string lambda_mode_arg = "normalized";
  std::vector<std::string> fn_args;
  std::optional<double> point_arg, bound_arg;
  double tol = 1e-9;
  bool dual_reading = false, force_solve = false;

  app.add_option("--out", common.out, "write the JSON report to a file");
  app.add_flag("--no-timings", common.no_timings, "omit timings from the report");

  auto add_problem = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--problem", problem_path, "problem file path");
    if (required) opt->required();
  };
  auto add_point = [&](CLI::App* cmd) {
    cmd->add_option("--point", point_arg, "candidate point u");
  };
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "tolerance (default 1e-9)");
  };

  auto* check = app.add_subcommand("check-kkt", "verify KKT with given multipliers");
  add_problem(check);
  add_point(check);
  add_tol(check);
  check->add_option("--alpha", alpha_arg, "level grid a:b:step (default: problem)");
  check->add_option("--lambda", lambda_arg, "endpoint weights l1,l2");
  check->add_option("--mu", mu_arg, "inequality multipliers");
  check->add_option("--theta", theta_arg, "equality multipliers");

  auto* solve = app.add_subcommand("solve-kkt", "search for KKT multipliers");
  add_problem(solve);
  add_point(solve);
  add_tol(solve);
  solve->add_option("--alpha", alpha_arg, "level grid (default: problem)");
  solve->add_option("--lambda-mode", lambda_mode_arg, "normalized | fixed");
  solve->add_option("--lambda", lambda_arg, "fixed endpoint weights l1,l2");

  auto* certify = app.add_subcommand("certify", "certify an invexity-type property");
  certify->add_option("--property", property_arg, "invex | pseudoinvex | quasiinvex | v_invex | v_pseudoinvex | v_quasiinvex")->required();
  certify->add_option("--fn", fn_args, "function expression (repeatable)")->required();
  certify->add_option("--eta", eta_arg, "kernel expression in (x, u)")->required();
  certify->add_option("--beta", beta_arg, "positive scalings, ';'-separated");
  certify->add_option("--grid", grid_arg, "sample grid a:b:step")->required();
  add_point(certify);
  add_tol(certify);
  certify->add_flag("--dual-reading", dual_reading,
                    "also evaluate the existential-subgradient reading");

  auto* pareto = app.add_subcommand("pareto", "enumerate fronts and audits");
  add_problem(pareto);
  pareto->add_option("--alpha", alpha_arg, "level grid (default: problem)");
  pareto->add_option("--mode", pareto_mode, "pareto | weak");
  pareto->add_option("--lambda", lambda_arg, "scalarization weights");
  add_point(pareto);
  pareto->add_option("--bound", bound_arg, "trade-off bound M for the audit");

  auto* nondom = app.add_subcommand("nondominance", "brute-force nondominance oracle");
  add_problem(nondom);
  add_point(nondom);
  nondom->add_option("--mode", nondom_mode, "weak | strict");

  auto* bridge = app.add_subcommand("bridge", "nondominance <-> Pareto bridge checks");
  add_problem(bridge);
  add_point(bridge);
  bridge->add_option("--lambda", lambda_arg, "scalarization weights");

  auto* theorem = app.add_subcommand("theorem", "run a KKT sufficiency pipeline");
  add_problem(theorem);
  add_point(theorem);
  add_tol(theorem);
  theorem->add_option("--rule", rule_arg,
                      "invex-single | invex-all | v-pseudo-single | v-pseudo-all | "
                      "pseudo-quasi | v-invex-quasi");
  theorem->add_option("--alpha", alpha_arg, "level scope (default: problem grid)");
  theorem->add_option("--lambda", lambda_arg, "endpoint weights l1,l2");
  theorem->add_option("--mu", mu_arg, "inequality multipliers");
  theorem->add_option("--theta", theta_arg, "equality multipliers");
  theorem->add_flag("--solve", force_solve, "search multipliers instead of verifying hints");

  auto* runex = app.add_subcommand("run-example", "reproduce a bundled example end to end");
  std::string example_id;
  runex->add_option("example", example_id, "ex1 | ex2 | ex3")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<invex::ProblemFile> pf;
    std::string canonical;
    if (!problem_path.empty()) {
      pf = invex::parse_problem(problem_path);
      canonical = pf->source_text;
    }
    if (check->parsed()) {
      double point = resolve_point(*pf, point_arg);
      auto m = resolve_multipliers(*pf, lambda_arg, mu_arg, theta_arg);
      auto alphas = alpha_arg.empty() ? pf->spec().alpha_grid : parse_grid_arg(alpha_arg);
      return cmd_check_kkt(*pf, point, m, alphas, tol, common, watch, canonical);
    }
    if (solve->parsed()) {
      double point = resolve_point(*pf, point_arg);
      auto alphas = alpha_arg.empty() ? pf->spec().alpha_grid : parse_grid_arg(alpha_arg);
      invex::LambdaMode mode = lambda_mode_arg == "fixed" ? invex::LambdaMode::Fixed
                                                          : invex::LambdaMode::Normalized;
      std::pair<double, double> fixed{0.0, 0.0};
      if (mode == invex::LambdaMode::Fixed) {
        auto l = pf->lambda;
        if (!lambda_arg.empty()) {
          auto v = parse_list_arg(lambda_arg);
          if (v.size() != 2) throw std::invalid_argument("--lambda needs two values");
          l = {v[0], v[1]};
        }
        if (!l) throw std::invalid_argument("fixed mode needs --lambda");
        fixed = *l;
      }
      return cmd_solve_kkt(*pf, point, mode, fixed, alphas, tol, common, watch, canonical);
    }
    if (certify->parsed()) {
      std::string canon = property_arg + "|" + eta_arg + "|" + grid_arg;
      for (const auto& f : fn_args) canon += "|" + f;
      return cmd_certify(fn_args, property_arg, eta_arg, beta_arg, grid_arg,
                         point_arg, tol, dual_reading, common, watch, canon);
    }
    if (pareto->parsed()) {
      auto alphas = alpha_arg.empty() ? pf->spec().alpha_grid : parse_grid_arg(alpha_arg);
      return cmd_pareto(*pf, alphas, pareto_mode, lambda_arg, point_arg, bound_arg,
                        common, watch, canonical);
    }
    if (nondom->parsed()) {
      double point = resolve_point(*pf, point_arg);
      return cmd_nondominance(*pf, point, nondom_mode, common, watch, canonical);
    }
    if (bridge->parsed()) {
      double point = resolve_point(*pf, point_arg);
      return cmd_bridge(*pf, point, lambda_arg, common, watch, canonical);
    }
    if (theorem->parsed()) {
      double point = resolve_point(*pf, point_arg);
      auto input = build_pipeline(*pf, rule_arg, lambda_arg, mu_arg, theta_arg,
                                  alpha_arg, force_solve, tol, tol);
      return cmd_theorem(*pf, point, input, common, watch, canonical);
    }
    if (runex->parsed()) {
      return cmd_run_example(example_id, common, watch);
    }
  } catch (const std::exception& ex) {
    Json err;
    err["error"] = ex.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
  return 2;
}
