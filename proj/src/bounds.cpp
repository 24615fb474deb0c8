#include "setpack/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace setpack {

double lagrangian_lower_bound(const DualValues& duals, std::span<const double> pricing_values) {
  double bound = duals.objective();
  for (double nu : pricing_values) bound += std::min(0.0, nu);
  return bound;
}

RoundedPacking round_upper_bound(std::span<const CellColumn> pool,
                                 std::span<const double> gamma, double tol) {
  const std::size_t n = pool.size();
  std::vector<double> g(gamma.begin(), gamma.end());
  for (double& v : g) {
    if (v <= tol) v = 0.0;
    if (v >= 1.0 - tol) v = 1.0;
  }

  // Conflict lists between pooled cells with positive weight.
  std::vector<std::size_t> live;
  for (std::size_t q = 0; q < n; ++q) {
    if (g[q] > 0.0) live.push_back(q);
  }
  std::unordered_map<SuperpixelId, std::vector<std::size_t>> holders;
  for (std::size_t q : live) {
    for (SuperpixelId d : pool[q].members) holders[d].push_back(q);
  }
  std::vector<std::vector<std::size_t>> conflicts(n);
  for (std::size_t q : live) {
    auto& list = conflicts[q];
    for (SuperpixelId d : pool[q].members) {
      for (std::size_t other : holders[d]) {
        if (other != q) list.push_back(other);
      }
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  for (;;) {
    std::size_t pick = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q : live) {
      if (!(g[q] > 0.0 && g[q] < 1.0)) continue;
      double score = pool[q].cost * g[q];
      for (std::size_t other : conflicts[q]) score -= pool[other].cost * g[other];
      if (pick == n || score < best ||
          (score == best && lexicographically_less(pool[q].members, pool[pick].members))) {
        pick = q;
        best = score;
      }
    }
    if (pick == n) break;
    for (std::size_t other : conflicts[pick]) {
      assert(g[other] < 1.0);
      g[other] = 0.0;
    }
    g[pick] = 1.0;
  }

  RoundedPacking result;
  for (std::size_t q : live) {
    if (g[q] == 1.0) result.cells.push_back(pool[q]);
  }
  std::sort(result.cells.begin(), result.cells.end(),
            [](const CellColumn& a, const CellColumn& b) {
              return lexicographically_less(a.members, b.members);
            });
  for (const auto& cell : result.cells) result.value += cell.cost;
  return result;
}

double normalized_gap(double upper, double lower) {
  if (lower == 0.0) {
    return upper <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return (upper - lower) / std::abs(lower);
}

}  // namespace setpack
