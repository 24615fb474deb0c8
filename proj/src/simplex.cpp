#include "setpack/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace setpack {

namespace {

constexpr int kNone = std::numeric_limits<int>::min();
// Entries of the basis inverse below this are cancellation noise.
constexpr double kDropTol = 1e-13;

// Deterministic value in [1, 2) per basis position.
double spread(int pos) {
  const double golden = 0.6180339887498949;
  const double x = static_cast<double>(pos + 1) * golden;
  return 1.0 + (x - std::floor(x));
}

}  // namespace

PackingSimplex::PackingSimplex(SimplexOptions options) : options_(options) {}

int PackingSimplex::add_row(std::span<const int> columns) {
  const int row = rows_++;
  for (int j : columns) {
    if (j < 0 || j >= this->columns()) throw SolverFailure("add_row: unknown column");
    col_rows_[j].push_back(row);  // new row index is the largest, order is kept
  }
  head_.push_back(slack_var(row));
  slack_pos_.push_back(static_cast<int>(head_.size()) - 1);
  dirty_ = true;
  return row;
}

int PackingSimplex::add_column(std::span<const int> rows, double cost) {
  std::vector<int> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int r : sorted) {
    if (r < 0 || r >= rows_) throw SolverFailure("add_column: unknown row");
  }
  col_rows_.push_back(std::move(sorted));
  cost_.push_back(cost);
  col_pos_.push_back(-1);
  return columns() - 1;
}

void PackingSimplex::reset_basis() {
  const int m = rows_;
  head_.resize(m);
  slack_pos_.resize(m);
  for (int i = 0; i < m; ++i) {
    head_[i] = slack_var(i);
    slack_pos_[i] = i;
  }
  std::fill(col_pos_.begin(), col_pos_.end(), -1);
  binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) binv_[static_cast<std::size_t>(i) * m + i] = 1.0;
  dirty_ = false;
  since_refactor_ = 0;
}

// rhs = 1, or 1 + B eps so that every basic value moves up by a distinct
// small positive amount and the current basis stays primal feasible.
void PackingSimplex::set_rhs(bool perturbed) {
  rhs_.assign(rows_, 1.0);
  if (!perturbed) return;
  for (int pos = 0; pos < rows_; ++pos) {
    const double eps = options_.perturbation * spread(pos);
    const int var = head_[pos];
    if (is_slack(var)) {
      rhs_[slack_row(var)] += eps;
    } else {
      for (int r : col_rows_[var]) rhs_[r] += eps;
    }
  }
}

bool PackingSimplex::refactor() {
  const int m = rows_;
  std::vector<int> structural;
  std::vector<char> slack_basic(m, 0);
  for (int var : head_) {
    if (is_slack(var)) {
      slack_basic[slack_row(var)] = 1;
    } else {
      structural.push_back(var);
    }
  }
  std::vector<int> free_rows;  // rows whose slack is nonbasic
  std::vector<int> rank_in_free(m, -1);
  for (int i = 0; i < m; ++i) {
    if (!slack_basic[i]) {
      rank_in_free[i] = static_cast<int>(free_rows.size());
      free_rows.push_back(i);
    }
  }
  const int k = static_cast<int>(structural.size());
  if (static_cast<int>(free_rows.size()) != k) return false;

  Eigen::MatrixXd inverse;
  if (k > 0) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(k, k);
    for (int t = 0; t < k; ++t) {
      for (int r : col_rows_[structural[t]]) {
        if (rank_in_free[r] >= 0) block(rank_in_free[r], t) = 1.0;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(block);
    if (!(lu.rcond() > 1e-12)) return false;
    inverse = lu.inverse();
  }

  const auto mm = static_cast<std::size_t>(m);
  binv_.assign(mm * mm, 0.0);
  head_.assign(m, 0);
  slack_pos_.assign(m, -1);
  std::fill(col_pos_.begin(), col_pos_.end(), -1);
  for (int i = 0; i < m; ++i) {
    if (slack_basic[i]) {
      head_[i] = slack_var(i);
      slack_pos_[i] = i;
      binv_[i * mm + i] = 1.0;
    }
  }
  for (int t = 0; t < k; ++t) {
    const int pos = free_rows[t];
    head_[pos] = structural[t];
    col_pos_[structural[t]] = pos;
    for (int s = 0; s < k; ++s) {
      const double v = inverse(t, s);
      binv_[pos * mm + free_rows[s]] = std::abs(v) < kDropTol ? 0.0 : v;
    }
  }
  // Rows with a basic slack: s_i = rhs_i - sum_t A(i, J_t) x_{J_t}.
  for (int t = 0; t < k; ++t) {
    for (int r : col_rows_[structural[t]]) {
      if (!slack_basic[r]) continue;
      for (int s = 0; s < k; ++s) {
        const double v = binv_[r * mm + free_rows[s]] - inverse(t, s);
        binv_[r * mm + free_rows[s]] = std::abs(v) < kDropTol ? 0.0 : v;
      }
    }
  }
  dirty_ = false;
  since_refactor_ = 0;
  recompute_solution();
  return true;
}

void PackingSimplex::recompute_solution() {
  const auto m = static_cast<std::size_t>(rows_);
  xb_.assign(m, 0.0);
  y_.assign(m, 0.0);
  for (std::size_t pos = 0; pos < m; ++pos) {
    const double* row = &binv_[pos * m];
    double sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) sum += row[r] * rhs_[r];
    xb_[pos] = sum;
    const double c = var_cost(head_[pos]);
    if (c != 0.0) {
      for (std::size_t r = 0; r < m; ++r) y_[r] += c * row[r];
    }
  }
}

double PackingSimplex::reduced_cost(int var) const {
  if (is_slack(var)) return -y_[slack_row(var)];
  double rc = cost_[var];
  for (int r : col_rows_[var]) rc -= y_[r];
  return rc;
}

bool PackingSimplex::primal_feasible() const {
  return std::all_of(xb_.begin(), xb_.end(),
                     [&](double v) { return v >= -options_.feasibility_tol; });
}

bool PackingSimplex::dual_feasible() const {
  for (int j = 0; j < columns(); ++j) {
    if (col_pos_[j] < 0 && reduced_cost(j) < -options_.optimality_tol) return false;
  }
  for (int i = 0; i < rows_; ++i) {
    if (slack_pos_[i] < 0 && -y_[i] < -options_.optimality_tol) return false;
  }
  return true;
}

void PackingSimplex::ftran(int var, std::vector<double>& alpha) const {
  const auto m = static_cast<std::size_t>(rows_);
  alpha.assign(m, 0.0);
  if (is_slack(var)) {
    const auto r = static_cast<std::size_t>(slack_row(var));
    for (std::size_t pos = 0; pos < m; ++pos) alpha[pos] = binv_[pos * m + r];
    return;
  }
  for (std::size_t pos = 0; pos < m; ++pos) {
    const double* row = &binv_[pos * m];
    double sum = 0.0;
    for (int r : col_rows_[var]) sum += row[r];
    alpha[pos] = std::abs(sum) < kDropTol ? 0.0 : sum;
  }
}

int PackingSimplex::choose_entering(bool bland, double& reduced) const {
  int best = kNone;
  double best_rc = -options_.optimality_tol;
  const int n = columns();
  for (int j = 0; j < n; ++j) {
    if (col_pos_[j] >= 0) continue;
    const double rc = reduced_cost(j);
    if (rc < best_rc) {
      best = j;
      best_rc = rc;
      if (bland) break;
    }
  }
  if (!(bland && best != kNone)) {
    for (int i = 0; i < rows_; ++i) {
      if (slack_pos_[i] >= 0) continue;
      const double rc = -y_[i];
      if (rc < best_rc) {
        best = slack_var(i);
        best_rc = rc;
        if (bland) break;
      }
    }
  }
  reduced = best_rc;
  return best;
}

int PackingSimplex::choose_leaving(const std::vector<double>& alpha, bool bland) const {
  int leave = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int pos = 0; pos < rows_; ++pos) {
    const double a = alpha[pos];
    if (a <= options_.pivot_tol) continue;
    const double ratio = std::max(0.0, xb_[pos]) / a;
    if (leave < 0 || ratio < best_ratio - 1e-12) {
      leave = pos;
      best_ratio = ratio;
    } else if (ratio <= best_ratio + 1e-12) {
      const bool take =
          bland ? order_key(head_[pos]) < order_key(head_[leave]) : a > alpha[leave];
      if (take) {
        leave = pos;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
  }
  return leave;
}

void PackingSimplex::pivot(int pos, int entering, const std::vector<double>& alpha,
                           double reduced, double step) {
  const auto m = static_cast<std::size_t>(rows_);
  const auto r = static_cast<std::size_t>(pos);
  for (std::size_t p = 0; p < m; ++p) {
    if (alpha[p] != 0.0) xb_[p] -= step * alpha[p];
  }
  xb_[r] = step;

  double* pivot_row = &binv_[r * m];
  const double inv = 1.0 / alpha[r];
  // Update only the span between the first and last nonzero of the pivot row;
  // the dense inner loop vectorizes.
  std::size_t lo = m, hi = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (pivot_row[c] != 0.0) {
      pivot_row[c] *= inv;
      lo = std::min(lo, c);
      hi = c + 1;
    }
  }
  for (std::size_t p = 0; p < m && lo < hi; ++p) {
    if (p == r || alpha[p] == 0.0) continue;
    double* row = &binv_[p * m];
    const double f = alpha[p];
    for (std::size_t c = lo; c < hi; ++c) row[c] -= f * pivot_row[c];
  }
  for (std::size_t c = lo; c < hi; ++c) y_[c] += reduced * pivot_row[c];

  const int leaving = head_[r];
  if (is_slack(leaving)) {
    slack_pos_[slack_row(leaving)] = -1;
  } else {
    col_pos_[leaving] = -1;
  }
  head_[r] = entering;
  if (is_slack(entering)) {
    slack_pos_[slack_row(entering)] = pos;
  } else {
    col_pos_[entering] = pos;
  }
}

void PackingSimplex::count_pivot(long start) {
  ++since_refactor_;
  ++total_pivots_;
  if (total_pivots_ - start > options_.max_pivots) {
    throw SolverFailure("simplex: pivot limit reached after " +
                        std::to_string(total_pivots_ - start) + " pivots");
  }
}

PackingSimplex::PhaseResult PackingSimplex::primal_phase(long start) {
  int degenerate_run = 0;
  std::vector<double> alpha;
  for (;;) {
    if (since_refactor_ >= options_.refactor_interval) {
      if (!refactor()) return PhaseResult::kStuck;
      if (!primal_feasible()) return PhaseResult::kLostFeasibility;
    }
    const bool bland = degenerate_run >= options_.degenerate_run_before_bland;
    double reduced = 0.0;
    const int entering = choose_entering(bland, reduced);
    if (entering == kNone) {
      if (since_refactor_ == 0) return PhaseResult::kOptimal;
      // Confirm optimality on freshly computed values.
      if (!refactor()) return PhaseResult::kStuck;
      if (!primal_feasible()) return PhaseResult::kLostFeasibility;
      continue;
    }
    ftran(entering, alpha);
    const int pos = choose_leaving(alpha, bland);
    if (pos < 0) throw SolverFailure("simplex: unbounded direction");
    const double step = std::max(0.0, xb_[pos]) / alpha[pos];
    degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
    pivot(pos, entering, alpha, reduced, step);
    count_pivot(start);
  }
}

PackingSimplex::PhaseResult PackingSimplex::dual_phase(long start) {
  const auto m = static_cast<std::size_t>(rows_);
  int degenerate_run = 0;
  std::vector<double> alpha;
  for (;;) {
    if (since_refactor_ >= options_.refactor_interval) {
      if (!refactor()) return PhaseResult::kStuck;
      if (!dual_feasible()) return PhaseResult::kLostFeasibility;
    }
    const bool bland = degenerate_run >= options_.degenerate_run_before_bland;

    int leave = -1;
    double worst = -options_.feasibility_tol;
    for (int pos = 0; pos < rows_; ++pos) {
      if (xb_[pos] >= -options_.feasibility_tol) continue;
      if (bland ? (leave < 0 || order_key(head_[pos]) < order_key(head_[leave]))
                : xb_[pos] < worst) {
        leave = pos;
        worst = xb_[pos];
      }
    }
    if (leave < 0) {
      if (since_refactor_ == 0) return PhaseResult::kOptimal;
      if (!refactor()) return PhaseResult::kStuck;
      if (!dual_feasible()) return PhaseResult::kLostFeasibility;
      continue;
    }

    const double* rho = &binv_[static_cast<std::size_t>(leave) * m];
    int entering = kNone;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_abs = 0.0;
    auto consider = [&](int var, double a) {
      if (a >= -options_.pivot_tol) return;
      const double ratio = std::max(0.0, reduced_cost(var)) / -a;
      bool take = false;
      if (entering == kNone || ratio < best_ratio - 1e-12) {
        take = true;
      } else if (ratio <= best_ratio + 1e-12) {
        take = bland ? order_key(var) < order_key(entering) : -a > best_abs;
      }
      if (take) {
        entering = var;
        best_ratio = ratio;
        best_abs = -a;
      }
    };
    for (int j = 0; j < columns(); ++j) {
      if (col_pos_[j] >= 0) continue;
      double a = 0.0;
      for (int r : col_rows_[j]) a += rho[r];
      consider(j, a);
    }
    for (int i = 0; i < rows_; ++i) {
      if (slack_pos_[i] < 0) consider(slack_var(i), rho[i]);
    }
    // x = 0 is always feasible, so a missing entering variable means the
    // factorization has drifted.
    if (entering == kNone) return PhaseResult::kStuck;

    ftran(entering, alpha);
    if (alpha[leave] >= -options_.pivot_tol) return PhaseResult::kStuck;
    const double step = xb_[leave] / alpha[leave];
    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    pivot(leave, entering, alpha, reduced_cost(entering), step);
    count_pivot(start);
  }
}

void PackingSimplex::solve() {
  const long start = total_pivots_;
  set_rhs(false);
  if (dirty_ && !refactor()) reset_basis();
  set_rhs(true);
  recompute_solution();

  bool exact = false;
  int resets = 0;
  auto restart = [&] {
    if (++resets > 3) throw SolverFailure("simplex: repeated loss of basis feasibility");
    reset_basis();
    set_rhs(!exact);
    recompute_solution();
  };
  for (int round = 0;; ++round) {
    if (round > 100) throw SolverFailure("simplex: phases did not settle");
    if (!primal_feasible()) {
      const auto result = dual_feasible() ? dual_phase(start) : PhaseResult::kStuck;
      if (result == PhaseResult::kLostFeasibility) continue;
      if (result == PhaseResult::kStuck) {
        restart();
        continue;
      }
    }
    const auto result = primal_phase(start);
    if (result == PhaseResult::kLostFeasibility) continue;
    if (result == PhaseResult::kStuck) {
      restart();
      continue;
    }
    if (!exact) {
      exact = true;
      set_rhs(false);
      recompute_solution();
      continue;
    }
    break;
  }
  objective_ = 0.0;
  for (int pos = 0; pos < rows_; ++pos) objective_ += var_cost(head_[pos]) * xb_[pos];
}

std::vector<double> PackingSimplex::primal() const {
  std::vector<double> x(columns(), 0.0);
  for (int j = 0; j < columns(); ++j) {
    if (col_pos_[j] >= 0) x[j] = std::clamp(xb_[col_pos_[j]], 0.0, 1.0);
  }
  return x;
}

std::vector<double> PackingSimplex::row_duals() const {
  std::vector<double> duals(rows_);
  for (int i = 0; i < rows_; ++i) duals[i] = std::max(0.0, -y_[i]);
  return duals;
}

}  // namespace setpack
