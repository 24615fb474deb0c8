#pragma once

#include <set>
#include <span>
#include <vector>

#include "setpack/model.hpp"
#include "setpack/simplex.hpp"

namespace setpack {

struct RestrictedProblem {
  std::vector<CellColumn> pool;
  std::vector<Triple> cuts;
};

struct LpSolution {
  FractionalSolution primal;  // gamma indexed like the pool
  DualValues duals;           // lambda per superpixel, kappa per cut
  double value = 0.0;
};

struct IlpSolution {
  std::vector<CellColumn> cells;  // sorted by member set
  double value = 0.0;
};

inline constexpr double kMasterTolerance = 1e-9;

// Restricted master LP that grows across column-generation iterations and
// warm-starts each solve from the previous basis.
class MasterLp {
 public:
  explicit MasterLp(const Instance& instance, SimplexOptions options = {});

  // Appends columns not already pooled; returns how many were new.
  std::size_t add_columns(std::span<const CellColumn> columns);
  // Appends cuts not already present; returns how many were new.
  std::size_t add_cuts(std::span<const Triple> cuts);

  LpSolution solve();

  const RestrictedProblem& problem() const { return problem_; }
  bool contains(const MemberSet& members) const { return pooled_.count(members) > 0; }
  long pivots() const { return simplex_.pivots(); }

 private:
  int row_for(SuperpixelId d);

  const Instance* instance_;
  RestrictedProblem problem_;
  PackingSimplex simplex_;
  std::set<MemberSet> pooled_;
  std::vector<int> superpixel_row_;  // -1 until some column covers it
  std::vector<int> cut_row_;
};

LpSolution solve_restricted_lp(const Instance& instance, const RestrictedProblem& problem);

// Exact optimum of the packing ILP restricted to the pool. Cuts are ignored:
// every integral packing satisfies them.
IlpSolution solve_restricted_ilp(const Instance& instance, const RestrictedProblem& problem);

bool is_integral(const FractionalSolution& solution, double tol = 1e-6);

}  // namespace setpack
