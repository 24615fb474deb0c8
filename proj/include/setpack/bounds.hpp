#pragma once

#include <span>
#include <vector>

#include "setpack/model.hpp"

namespace setpack {

// -sum(kappa) - sum(lambda) + sum_d min(0, nu_d), where nu_d is the exact
// minimum reduced cost over cells anchored at d (+inf when none exists).
// A valid lower bound on the packing optimum for any nonnegative duals.
double lagrangian_lower_bound(const DualValues& duals, std::span<const double> pricing_values);

struct RoundedPacking {
  std::vector<CellColumn> cells;  // sorted by member set
  double value = 0.0;
};

// Greedy rounding of a fractional pool solution into a disjoint packing.
RoundedPacking round_upper_bound(std::span<const CellColumn> pool,
                                 std::span<const double> gamma, double tol = 1e-9);

// (ub - lb) / |lb|; 0 when both are 0, +inf when only lb is 0.
double normalized_gap(double upper, double lower);

}  // namespace setpack
