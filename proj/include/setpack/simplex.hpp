#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace setpack {

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimplexOptions {
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-9;
  long max_pivots = 2'000'000;
  int refactor_interval = 500;
  int degenerate_run_before_bland = 50;
  // Scale of the deterministic right-hand-side perturbation used while
  // pivoting. The final basis is always cleaned up against the exact rhs.
  double perturbation = 1e-6;
};

// Revised primal simplex for packing LPs
//
//   min c'x  s.t.  A x <= 1,  x >= 0,  A in {0,1}
//
// Rows and columns can be appended between solves and the basis is kept.
// Appending columns keeps the basis primal feasible, so the primal simplex
// continues from it; appending a row keeps it dual feasible, so the dual
// simplex repairs it. Packing LPs are heavily degenerate: the primal phase runs
// on a slightly perturbed right-hand side and a final dual phase restores the
// exact one.
//
// The basis inverse is stored explicitly and densely. Refactorization only
// inverts the structural block of the basis, which stays small because most
// rows of a packing LP keep their slack basic.
class PackingSimplex {
 public:
  explicit PackingSimplex(SimplexOptions options = {});

  // Appends a row with coefficient 1 in the listed existing columns.
  int add_row(std::span<const int> columns = {});
  // Appends a column with coefficient 1 in the listed existing rows.
  int add_column(std::span<const int> rows, double cost);

  int rows() const { return rows_; }
  int columns() const { return static_cast<int>(cost_.size()); }

  // Runs to optimality. Throws SolverFailure on pivot-limit exhaustion,
  // unboundedness or an unrecoverable singular basis.
  void solve();

  double objective() const { return objective_; }
  // Column values after solve(), clamped to [0, 1].
  std::vector<double> primal() const;
  // Row duals in the nonnegative convention: c_j + sum_i A_ij dual_i >= 0.
  std::vector<double> row_duals() const;
  long pivots() const { return total_pivots_; }

  // Forgets the basis and restarts from all slacks.
  void reset_basis();

 private:
  // Variables 0..n-1 are structural; slack of row i is encoded as -(i + 1).
  static int slack_var(int row) { return -(row + 1); }
  static bool is_slack(int var) { return var < 0; }
  static int slack_row(int var) { return -var - 1; }

  enum class PhaseResult { kOptimal, kLostFeasibility, kStuck };

  double var_cost(int var) const { return is_slack(var) ? 0.0 : cost_[var]; }
  int order_key(int var) const { return is_slack(var) ? columns() + slack_row(var) : var; }
  double reduced_cost(int var) const;
  void set_rhs(bool perturbed);
  bool refactor();
  void recompute_solution();
  void ftran(int var, std::vector<double>& alpha) const;
  int choose_entering(bool bland, double& reduced) const;
  int choose_leaving(const std::vector<double>& alpha, bool bland) const;
  void pivot(int pos, int entering, const std::vector<double>& alpha, double reduced,
             double step);
  bool primal_feasible() const;
  bool dual_feasible() const;
  void count_pivot(long start);
  PhaseResult primal_phase(long start);
  PhaseResult dual_phase(long start);

  SimplexOptions options_;
  int rows_ = 0;
  std::vector<std::vector<int>> col_rows_;  // sorted row lists per column
  std::vector<double> cost_;

  std::vector<int> head_;         // basis position -> variable
  std::vector<int> col_pos_;      // structural -> basis position or -1
  std::vector<int> slack_pos_;    // row -> basis position of its slack or -1
  std::vector<double> binv_;      // rows_ x rows_, row-major [position][row]
  std::vector<double> rhs_;       // current right-hand side per row
  std::vector<double> xb_;        // basic values by position
  std::vector<double> y_;         // c_B' B^-1 per row
  bool dirty_ = true;
  int since_refactor_ = 0;
  double objective_ = 0.0;
  long total_pivots_ = 0;
};

}  // namespace setpack
