#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "setpack/master.hpp"
#include "setpack/model.hpp"

namespace setpack {

struct SolveConfig {
  double eps_rc = 1e-9;
  double cut_tol = 1e-6;
  int max_cuts_per_iter = 1;
  int max_iterations = 1000;
  int thread_count = 1;  // <= 0: OpenMP default
  std::optional<double> time_limit_seconds;
  // Certification slack between the final integral value and the LP bound.
  double certify_tol = 1e-6;
};

struct IterationRecord {
  int iteration = 0;
  double lp_value = 0.0;
  double lagrangian_lb = 0.0;
  double best_lb = 0.0;
  double best_ub = 0.0;
  std::size_t pool_size = 0;
  std::size_t cut_count = 0;
  std::size_t columns_added = 0;
  std::size_t cuts_added = 0;
  double wall_seconds = 0.0;
};

struct SolveReport {
  std::vector<IterationRecord> iterations;
  std::vector<CellColumn> cells;
  double objective = 0.0;
  bool certified = false;
  bool converged = false;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double normalized_gap = 0.0;
  double final_lp_value = 0.0;
  RestrictedProblem problem;  // pool and cuts at exit
  int thread_count = 1;
  double wall_seconds = 0.0;
};

using ProgressCallback = std::function<void(const IterationRecord&)>;

// Column and row generation until no negative reduced-cost cell and no
// violated triple remain, then an exact integral solution over the pool.
// Hitting max_iterations or the time limit returns the best bounds seen so
// far with certified = false.
SolveReport solve(const Instance& instance, const SolveConfig& config = {},
                  const ProgressCallback& progress = {});

}  // namespace setpack
