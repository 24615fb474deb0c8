#pragma once

#include <vector>

namespace setpack {

// Minimum-cost assignment on a rows x cols cost matrix (row-major). Returns,
// for each row, the assigned column or -1. Every row is assigned when
// rows <= cols; otherwise every column is. O(n^3).
std::vector<int> hungarian_assignment(const std::vector<double>& cost, int rows, int cols);

}  // namespace setpack
