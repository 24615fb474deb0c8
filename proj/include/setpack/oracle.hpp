#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "setpack/model.hpp"

namespace setpack {

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::uint64_t max_enumeration = std::uint64_t{1} << 22;  // sum over d of 2^|N(d)|
  std::size_t max_superpixels = 64;
  std::size_t max_states = std::size_t{1} << 22;
};

struct OracleSolution {
  std::vector<CellColumn> cells;  // sorted by member set
  double value = 0.0;
  std::size_t feasible_cells = 0;
};

// Every feasible cell of the instance, sorted by member set.
std::vector<CellColumn> enumerate_feasible_cells(const Instance& instance,
                                                 const OracleLimits& limits = {});

// Exhaustive reference solver: enumerate all feasible cells, then exact set
// packing over superpixel bitmasks with memoization.
OracleSolution oracle_solve(const Instance& instance, const OracleLimits& limits = {});

}  // namespace setpack
