// Dense two-phase primal simplex on an Eigen tableau.  Dantzig pricing, with
// Bland's rule taking over during long runs of degenerate pivots.
//
//   maximize c·x  subject to  A_i·x {<=, >=, =} b_i,  x_j >= 0 or free.
//
// Sized for a few hundred variables and a few thousand rows.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pdw {

enum class RowSense { le, ge, eq };
enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

template <typename Scalar = double>
struct LinearProgram {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit LinearProgram(int num_vars = 0) : objective(Vector::Zero(num_vars)), free(num_vars, false) {}

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  void add_row(const Vector& coeffs, RowSense sense, Scalar value) {
    if (coeffs.size() != objective.size()) throw std::invalid_argument("LinearProgram::add_row: size mismatch");
    rows.push_back(coeffs);
    senses.push_back(sense);
    rhs.push_back(value);
  }

  Vector objective;          // maximized
  std::vector<bool> free;    // free[j]: x_j unrestricted in sign
  std::vector<Vector> rows;
  std::vector<RowSense> senses;
  std::vector<Scalar> rhs;
};

template <typename Scalar = double>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar objective = 0;
  int iterations = 0;
  /// Row multipliers y with c = Σ_i y_i A_i on the basic columns; y_i >= 0
  /// on binding <= rows and <= 0 on binding >= rows.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> duals;
};

enum class SimplexMethod { automatic, primal, dual };

struct SimplexOptions {
  double tolerance = 1e-9;
  int max_iterations = 200000;
  /// `dual` runs the primal simplex on the dual program and reads x off its
  /// multipliers; `automatic` does so when rows outnumber variables twofold.
  SimplexMethod method = SimplexMethod::automatic;
};

namespace detail {

// Tableau rows hold B⁻¹[A | b]; the last row holds reduced costs and -c_B·x_B
// (minimization form).  Rows are periodically rebuilt from the original data
// by an LU solve to keep rounding from accumulating.
template <typename Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static constexpr int kRefreshInterval = 32;
  static constexpr int kDegenerateRun = 50;

  Tableau(Matrix original, std::vector<int> basis, Scalar tol)
      : original_(std::move(original)), t_(Matrix::Zero(original_.rows() + 1, original_.cols())),
        basis_(std::move(basis)), tol_(tol) {
    t_.topRows(rows()) = original_;
  }

  Matrix& data() { return t_; }
  std::vector<int>& basis() { return basis_; }
  int rows() const { return static_cast<int>(original_.rows()); }
  int cols() const { return static_cast<int>(original_.cols()) - 1; }

  void set_cost(Vector cost) {
    cost_ = std::move(cost);
    refresh();
  }

  void refresh() {
    const int m = rows();
    Matrix B(m, m);
    for (int i = 0; i < m; ++i) B.col(i) = original_.col(basis_[i]);
    t_.topRows(m) = B.partialPivLu().solve(original_);
    for (int i = 0; i < m; ++i) {
      t_.row(i) = t_.row(i).unaryExpr([](Scalar v) { return std::abs(v) < Scalar(1e-13) ? Scalar(0) : v; });
      t_(i, basis_[i]) = 1;
    }
    t_.row(m).setZero();
    t_.row(m).head(cols()) = cost_.transpose();
    for (int i = 0; i < m; ++i) {
      const Scalar cb = cost_(basis_[i]);
      if (cb != Scalar(0)) t_.row(m) -= cb * t_.row(i);
    }
    since_refresh_ = 0;
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (f != Scalar(0)) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
    if (++since_refresh_ >= kRefreshInterval) refresh();
  }

  // Most negative reduced cost enters; after kDegenerateRun pivots without
  // objective progress the lowest improving index enters instead (Bland)
  // until progress resumes.  The leaving row comes from a Harris ratio test.
  LpStatus optimize(int active_cols, int* iterations, int max_iterations) {
    const int m = rows();
    bool verified = false;
    int degenerate_run = 0;
    while (true) {
      if (*iterations >= max_iterations) return LpStatus::iteration_limit;
      int enter = -1;
      const bool bland = degenerate_run >= kDegenerateRun;
      for (int j = 0; j < active_cols; ++j) {
        if (t_(m, j) < -tol_ && (enter < 0 || t_(m, j) < t_(m, enter))) {
          enter = j;
          if (bland) break;
        }
      }
      if (enter < 0) {
        if (verified || since_refresh_ == 0) return LpStatus::optimal;
        refresh();
        verified = true;
        continue;
      }
      // Harris two-pass ratio test: bound the step allowing a slack of tol
      // in each row, then take the largest pivot within that step
      Scalar bound = std::numeric_limits<Scalar>::infinity();
      for (int i = 0; i < m; ++i) {
        const Scalar a = t_(i, enter);
        if (a > tol_) bound = std::min(bound, (std::max(t_(i, cols()), Scalar(0)) + tol_) / a);
      }
      if (!std::isfinite(bound)) {
        if (verified || since_refresh_ == 0) return LpStatus::unbounded;
        refresh();
        verified = true;
        continue;
      }
      int leave = -1;
      for (int i = 0; i < m; ++i) {
        const Scalar a = t_(i, enter);
        if (a > tol_ && std::max(t_(i, cols()), Scalar(0)) / a <= bound &&
            (leave < 0 || a > t_(leave, enter) || (a == t_(leave, enter) && basis_[i] < basis_[leave]))) {
          leave = i;
        }
      }
      const Scalar before = t_(m, cols());
      pivot(leave, enter);
      degenerate_run = std::abs(t_(m, cols()) - before) <= tol_ ? degenerate_run + 1 : 0;
      verified = false;
      ++*iterations;
    }
  }

 private:
  Matrix original_;
  Matrix t_;
  Vector cost_;
  std::vector<int> basis_;
  Scalar tol_;
  int since_refresh_ = 0;
};

}  // namespace detail

namespace detail {

template <typename Scalar>
LpResult<Scalar> solve_primal(const LinearProgram<Scalar>& lp, const SimplexOptions& options) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Scalar tol = static_cast<Scalar>(options.tolerance);
  const int n = lp.num_vars();
  const int m = lp.num_rows();

  // column layout: structural (x⁺ then x⁻ for free vars), slacks, artificials
  std::vector<int> minus_col(n, -1);
  int ncols = n;
  for (int j = 0; j < n; ++j)
    if (lp.free[j]) minus_col[j] = ncols++;

  std::vector<Scalar> sign(m, Scalar(1));
  std::vector<RowSense> sense(lp.senses);
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0) {
      sign[i] = -1;
      if (sense[i] == RowSense::le) sense[i] = RowSense::ge;
      else if (sense[i] == RowSense::ge) sense[i] = RowSense::le;
    }
  }
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (sense[i] != RowSense::eq) slack_col[i] = ncols++;
  const int art_begin = ncols;
  for (int i = 0; i < m; ++i)
    if (sense[i] != RowSense::le) art_col[i] = ncols++;

  Matrix original = Matrix::Zero(m, ncols + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const Scalar a = sign[i] * lp.rows[i](j);
      original(i, j) = a;
      if (minus_col[j] >= 0) original(i, minus_col[j]) = -a;
    }
    if (slack_col[i] >= 0) original(i, slack_col[i]) = sense[i] == RowSense::le ? Scalar(1) : Scalar(-1);
    if (art_col[i] >= 0) original(i, art_col[i]) = 1;
    original(i, ncols) = sign[i] * lp.rhs[i];
    basis[i] = sense[i] == RowSense::le ? slack_col[i] : art_col[i];
  }
  detail::Tableau<Scalar> tab(original, std::move(basis), tol);
  LpResult<Scalar> result;

  // phase 1: minimize Σ artificials
  if (art_begin < ncols) {
    Vector cost = Vector::Zero(ncols);
    cost.tail(ncols - art_begin).setOnes();
    tab.set_cost(cost);
    const LpStatus s = tab.optimize(ncols, &result.iterations, options.max_iterations);
    if (s == LpStatus::iteration_limit) {
      result.status = s;
      return result;
    }
    auto& d = tab.data();
    if (-d(m, ncols) > tol * std::max<Scalar>(1, original.col(ncols).cwiseAbs().maxCoeff())) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // drive remaining artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < art_begin) continue;
      int best = -1;
      for (int j = 0; j < art_begin; ++j)
        if (std::abs(d(i, j)) > tol && (best < 0 || std::abs(d(i, j)) > std::abs(d(i, best)))) best = j;
      if (best >= 0) tab.pivot(i, best);
    }
  }

  // phase 2: minimize -c·x over the non-artificial columns
  {
    Vector cost = Vector::Zero(ncols);
    for (int j = 0; j < n; ++j) {
      cost(j) = -lp.objective(j);
      if (minus_col[j] >= 0) cost(minus_col[j]) = lp.objective(j);
    }
    tab.set_cost(cost);
    const LpStatus s = tab.optimize(art_begin, &result.iterations, options.max_iterations);
    result.status = s;
    if (s != LpStatus::optimal) return result;
  }

  // recompute the basic solution from the original columns; rows whose basic
  // variable is a stranded artificial are redundant and dropped
  std::vector<int> keep_rows, keep_cols;
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < art_begin) {
      keep_rows.push_back(i);
      keep_cols.push_back(tab.basis()[i]);
    }
  }
  Vector full = Vector::Zero(ncols);
  if (!keep_rows.empty()) {
    const int k = static_cast<int>(keep_rows.size());
    Matrix B(k, k);
    Vector rhs(k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) B(r, c) = original(keep_rows[r], keep_cols[c]);
      rhs(r) = sign[keep_rows[r]] * lp.rhs[keep_rows[r]];
    }
    const auto lu = B.partialPivLu();
    const Vector xb = lu.solve(rhs);
    for (int c = 0; c < k; ++c) full(keep_cols[c]) = xb(c);
    Vector cb(k);
    for (int c = 0; c < k; ++c) {
      const int col = keep_cols[c];
      cb(c) = 0;
      for (int j = 0; j < n; ++j) {
        if (col == j) cb(c) = lp.objective(j);
        if (col == minus_col[j]) cb(c) = -lp.objective(j);
      }
    }
    const Vector pi = lu.transpose().solve(cb);
    result.duals = Vector::Zero(m);
    for (int r = 0; r < k; ++r) result.duals(keep_rows[r]) = sign[keep_rows[r]] * pi(r);
  } else {
    result.duals = Vector::Zero(m);
  }
  result.x = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    result.x(j) = full(j);
    if (minus_col[j] >= 0) result.x(j) -= full(minus_col[j]);
  }
  result.objective = lp.objective.dot(result.x);
  return result;
}

// max c·x s.t. A x {<=,>=,=} b  has the dual  min b·y s.t. Aᵀy >= c (x_j >= 0)
// or = c (x_j free), with y >= 0 on <= rows, y <= 0 on >= rows, y free on
// = rows.  It is solved as max -b·y with y <= 0 rows negated, and x is read
// off the multipliers of its column constraints.
template <typename Scalar>
LpResult<Scalar> solve_via_dual(const LinearProgram<Scalar>& lp, const SimplexOptions& options) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  std::vector<Scalar> flip(m, Scalar(1));
  LinearProgram<Scalar> dual(m);
  for (int i = 0; i < m; ++i) {
    if (lp.senses[i] == RowSense::ge) flip[i] = -1;
    dual.free[i] = lp.senses[i] == RowSense::eq;
    dual.objective(i) = -flip[i] * lp.rhs[i];
  }
  Vector col(m);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) col(i) = flip[i] * lp.rows[i](j);
    dual.add_row(col, lp.free[j] ? RowSense::eq : RowSense::ge, lp.objective(j));
  }
  const LpResult<Scalar> d = solve_primal(dual, options);
  LpResult<Scalar> result;
  result.iterations = d.iterations;
  switch (d.status) {
    case LpStatus::optimal: result.status = LpStatus::optimal; break;
    case LpStatus::unbounded: result.status = LpStatus::infeasible; break;
    case LpStatus::infeasible: result.status = LpStatus::unbounded; break;
    case LpStatus::iteration_limit: result.status = LpStatus::iteration_limit; break;
  }
  if (result.status != LpStatus::optimal) return result;
  result.x = -d.duals;
  result.duals = Vector(m);
  for (int i = 0; i < m; ++i) result.duals(i) = flip[i] * d.x(i);
  result.objective = lp.objective.dot(result.x);
  return result;
}

}  // namespace detail

/// Solves the program.  The returned x is recomputed from the final basis by
/// an LU solve against the original constraint columns.
template <typename Scalar>
LpResult<Scalar> solve_lp(const LinearProgram<Scalar>& lp, const SimplexOptions& options = {}) {
  bool use_dual = options.method == SimplexMethod::dual;
  if (options.method == SimplexMethod::automatic) use_dual = lp.num_rows() > 2 * lp.num_vars();
  return use_dual ? detail::solve_via_dual(lp, options) : detail::solve_primal(lp, options);
}

}  // namespace pdw
