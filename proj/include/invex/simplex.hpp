#ifndef INVEX_SIMPLEX_HPP_
#define INVEX_SIMPLEX_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace invex {

// Dense two-phase simplex for tiny equality-form programs
//   min c'x  s.t.  Ax = b, x >= 0.
// Bland's rule throughout, so pivoting is deterministic and cycle-free.
class SimplexSolver {
 public:
  struct Result {
    bool feasible = false;        // phase-1 optimum within tolerance
    double objective = 0.0;       // phase-2 value (or phase-1 infeasibility)
    double infeasibility = 0.0;   // phase-1 optimum
    std::vector<double> x;
  };

  SimplexSolver(std::vector<std::vector<double>> a, std::vector<double> b,
                std::vector<double> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    rows_ = a_.size();
    cols_ = rows_ ? a_.front().size() : c_.size();
    if (b_.size() != rows_ || c_.size() != cols_)
      throw std::invalid_argument("SimplexSolver: shape mismatch");
  }

  Result solve(double tol = 1e-9) {
    build_tableau();
    // Phase 1: drive artificials out.
    run(/*phase=*/1);
    Result res;
    res.infeasibility = -t_[rows_][total_cols_];
    if (res.infeasibility > tol) {
      res.feasible = false;
      res.objective = res.infeasibility;
      res.x.assign(cols_, 0.0);
      extract(res.x);
      return res;
    }
    pivot_out_artificials();
    load_phase2_costs();
    run(/*phase=*/2);
    res.feasible = true;
    res.objective = -t_[rows_][total_cols_];
    res.x.assign(cols_, 0.0);
    extract(res.x);
    return res;
  }

 private:
  void build_tableau() {
    total_cols_ = cols_ + rows_;  // structural + artificial
    t_.assign(rows_ + 1, std::vector<double>(total_cols_ + 1, 0.0));
    basis_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double sgn = b_[i] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] = sgn * a_[i][j];
      t_[i][cols_ + i] = 1.0;
      t_[i][total_cols_] = sgn * b_[i];
      basis_[i] = cols_ + i;
    }
    // Phase-1 objective: minimize sum of artificials. Express reduced costs
    // by subtracting each row from the objective row.
    for (std::size_t j = 0; j <= total_cols_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += t_[i][j];
      t_[rows_][j] = -s;
    }
    for (std::size_t i = 0; i < rows_; ++i) t_[rows_][cols_ + i] = 0.0;
  }

  void load_phase2_costs() {
    for (std::size_t j = 0; j <= total_cols_; ++j) t_[rows_][j] = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) t_[rows_][j] = c_[j];
    // Reduce against current basis.
    for (std::size_t i = 0; i < rows_; ++i) {
      std::size_t bj = basis_[i];
      double cb = bj < cols_ ? c_[bj] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= total_cols_; ++j) t_[rows_][j] -= cb * t_[i][j];
    }
  }

  bool column_allowed(std::size_t j, int phase) const {
    if (phase == 2 && j >= cols_) return false;  // artificials stay out
    return true;
  }

  void run(int phase) {
    const double eps = 1e-11;
    for (std::size_t iter = 0; iter < kMaxIter; ++iter) {
      // Bland: smallest-index column with negative reduced cost.
      std::size_t enter = total_cols_;
      for (std::size_t j = 0; j < total_cols_; ++j) {
        if (!column_allowed(j, phase)) continue;
        if (t_[rows_][j] < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == total_cols_) return;  // optimal
      // Ratio test; Bland tie-break on smallest row index.
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= eps) continue;
        double ratio = t_[i][total_cols_] / t_[i][enter];
        if (ratio < best - eps ||
            (ratio < best + eps && (leave == rows_ || basis_[i] < basis_[leave]))) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == rows_)
        throw std::runtime_error("SimplexSolver: unbounded program");
      pivot(leave, enter);
    }
    throw std::runtime_error("SimplexSolver: iteration limit");
  }

  void pivot(std::size_t row, std::size_t col) {
    double p = t_[row][col];
    for (std::size_t j = 0; j <= total_cols_; ++j) t_[row][j] /= p;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == row) continue;
      double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= total_cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  // Swap remaining zero-valued artificials for structural columns when
  // possible so phase 2 starts from a clean basis.
  void pivot_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (std::fabs(t_[i][j]) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void extract(std::vector<double>& x) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < cols_) x[basis_[i]] = t_[i][total_cols_];
  }

  static constexpr std::size_t kMaxIter = 20000;

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<double> c_;
  std::size_t rows_ = 0, cols_ = 0, total_cols_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace invex

#endif  // INVEX_SIMPLEX_HPP_
