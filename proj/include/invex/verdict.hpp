#ifndef INVEX_VERDICT_HPP_
#define INVEX_VERDICT_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace invex {

// A concrete violating record produced by a certification sweep.
struct Witness {
  double x = 0.0;
  double u = 0.0;
  double xi = 0.0;    // subgradient (or envelope) value behind the violation
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

// Outcome of a sampled certification: pass with counts, or fail with
// witnesses. A pass is always "pass (sampled)" -- it certifies the grid, not
// the continuum.
struct Verdict {
  bool passed = true;
  std::vector<Witness> witnesses;
  std::size_t checked_pairs = 0;
  std::size_t vacuous_pairs = 0;
  double eps = 0.0;

  void merge(const Verdict& other) {
    passed = passed && other.passed;
    checked_pairs += other.checked_pairs;
    vacuous_pairs += other.vacuous_pairs;
    witnesses.insert(witnesses.end(), other.witnesses.begin(),
                     other.witnesses.end());
  }
};

}  // namespace invex

#endif  // INVEX_VERDICT_HPP_
