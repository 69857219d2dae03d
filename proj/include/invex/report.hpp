#ifndef INVEX_REPORT_HPP_
#define INVEX_REPORT_HPP_

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "invex/fop.hpp"
#include "invex/kkt.hpp"
#include "invex/verdict.hpp"

namespace invex {

using Json = nlohmann::ordered_json;

// FNV-1a over the canonical input description; good enough to tie a report to
// its inputs.
inline std::string input_digest(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

inline Json to_json(const Witness& w) {
  return Json{{"x", w.x}, {"u", w.u}, {"xi", w.xi}, {"lhs", w.lhs},
              {"rhs", w.rhs}, {"detail", w.detail}};
}

inline Json to_json(const Verdict& v, std::size_t max_witnesses = 32) {
  Json j;
  j["passed"] = v.passed;
  j["status"] = v.passed ? "pass (sampled)" : "fail";
  j["checked_pairs"] = v.checked_pairs;
  j["vacuous_pairs"] = v.vacuous_pairs;
  j["eps"] = v.eps;
  j["witness_count"] = v.witnesses.size();
  Json ws = Json::array();
  for (std::size_t i = 0; i < v.witnesses.size() && i < max_witnesses; ++i)
    ws.push_back(to_json(v.witnesses[i]));
  j["witnesses"] = std::move(ws);
  return j;
}

inline Json to_json(const MultiplierSet& m) {
  Json j;
  j["lambda1"] = m.lambda1;
  j["lambda2"] = m.lambda2;
  j["mu"] = m.mu;
  j["theta"] = m.theta;
  if (m.lambda_on_bound) j["lambda_on_bound"] = true;
  return j;
}

inline Json to_json(const KKTReport& r) {
  Json j;
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["residual"] = r.residual;
    j["multipliers"] = to_json(r.multipliers);
    Json sel = Json::array();
    for (const auto& s : r.selected) sel.push_back(s);
    j["selected_subgradients"] = std::move(sel);
  }
  return j;
}

inline Json to_json(const BridgeReport& b) {
  Json j;
  j["weakly_nondominated"] = b.nd_weak;
  j["nondominated"] = b.nd_strict;
  Json items = Json::array();
  for (const auto& it : b.items)
    items.push_back(Json{{"name", it.name}, {"status", to_string(it.status)}});
  j["implications"] = std::move(items);
  j["all_consistent"] = b.all_consistent();
  return j;
}

inline Json to_json(const NondomVerdict& v) {
  Json j;
  j["passed"] = v.passed;
  j["checked_points"] = v.checked_points;
  if (!v.passed) {
    j["witness_x"] = v.witness_x;
    j["witness_branches"] = v.witness_branches;
  }
  return j;
}

inline Json to_json(const PipelineReport& r) {
  Json j;
  j["rule"] = to_string(r.rule);
  j["hypotheses_passed"] = r.hypotheses_passed;
  if (!r.failure.empty()) j["failure"] = r.failure;
  Json levels = Json::array();
  for (const auto& a : r.per_alpha) {
    Json la;
    la["alpha"] = a.alpha;
    la["kkt"] = to_json(a.kkt);
    Json certs = Json::array();
    for (const auto& c : a.certifications) {
      Json cj = to_json(c.verdict);
      cj["name"] = c.name;
      certs.push_back(std::move(cj));
    }
    la["certifications"] = std::move(certs);
    la["passed"] = a.passed;
    levels.push_back(std::move(la));
  }
  j["per_level"] = std::move(levels);
  j["conclusion"] = r.hypotheses_passed ? to_string(r.conclusion)
                                        : "inconclusive -- hypothesis failed";
  j["oracle_agrees"] = r.oracle_agrees;
  j["oracle_detail"] = r.oracle_detail;
  if (!r.bridge_note.empty()) j["bridge_note"] = r.bridge_note;
  return j;
}

// Wall-clock timer for the optional timings block.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace invex

#endif  // INVEX_REPORT_HPP_
