#include "setpack/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace setpack {

namespace {

void check_size(const Instance& instance, const OracleLimits& limits,
                std::vector<MemberSet>& hoods) {
  const auto n = instance.size();
  if (n > limits.max_superpixels || n > 64) {
    throw OracleTooLarge("oracle refuses " + std::to_string(n) + " superpixels (limit " +
                         std::to_string(std::min<std::size_t>(limits.max_superpixels, 64)) + ")");
  }
  std::uint64_t work = 0;
  hoods.assign(n, {});
  for (SuperpixelId a = 0; a < static_cast<SuperpixelId>(n); ++a) {
    for (SuperpixelId d = 0; d < static_cast<SuperpixelId>(n); ++d) {
      if (instance.within_radius(a, d)) hoods[a].push_back(d);
    }
    const auto size = hoods[a].size();
    if (size >= 63) throw OracleTooLarge("oracle neighborhood too large");
    work += std::uint64_t{1} << size;
    if (work > limits.max_enumeration) {
      throw OracleTooLarge("oracle enumeration exceeds " +
                           std::to_string(limits.max_enumeration) + " subsets");
    }
  }
}

}  // namespace

std::vector<CellColumn> enumerate_feasible_cells(const Instance& instance,
                                                 const OracleLimits& limits) {
  std::vector<MemberSet> hoods;
  check_size(instance, limits, hoods);
  std::unordered_set<std::uint64_t> seen;
  std::vector<CellColumn> cells;
  for (SuperpixelId anchor = 0; anchor < static_cast<SuperpixelId>(instance.size()); ++anchor) {
    std::vector<SuperpixelId> others;
    for (SuperpixelId d : hoods[anchor]) {
      if (d != anchor) others.push_back(d);
    }
    const std::uint64_t subsets = std::uint64_t{1} << others.size();
    for (std::uint64_t pick = 0; pick < subsets; ++pick) {
      std::uint64_t mask = std::uint64_t{1} << anchor;
      std::vector<SuperpixelId> members{anchor};
      for (std::size_t k = 0; k < others.size(); ++k) {
        if (pick >> k & 1) {
          mask |= std::uint64_t{1} << others[k];
          members.push_back(others[k]);
        }
      }
      if (seen.count(mask)) continue;
      auto check = feasible_cell(instance, members);
      if (!check.feasible) continue;
      seen.insert(mask);
      CellColumn cell;
      cell.members = normalize_members(std::move(members));
      cell.cost = cell_cost(instance, cell.members);
      cell.anchors = std::move(check.anchors);
      cells.push_back(std::move(cell));
    }
  }
  std::sort(cells.begin(), cells.end(), [](const CellColumn& a, const CellColumn& b) {
    return lexicographically_less(a.members, b.members);
  });
  return cells;
}

OracleSolution oracle_solve(const Instance& instance, const OracleLimits& limits) {
  auto cells = enumerate_feasible_cells(instance, limits);
  const auto n = instance.size();

  std::vector<std::uint64_t> masks(cells.size());
  std::vector<std::vector<std::size_t>> containing(n);
  for (std::size_t q = 0; q < cells.size(); ++q) {
    for (SuperpixelId d : cells[q].members) {
      masks[q] |= std::uint64_t{1} << d;
      containing[d].push_back(q);
    }
  }

  struct Entry {
    double value;
    std::int64_t choice;  // cell index, or -1 for "lowest free superpixel left empty"
  };
  std::unordered_map<std::uint64_t, Entry> memo;

  // best(free) branches on the lowest free superpixel.
  auto best = [&](auto&& self, std::uint64_t free) -> double {
    if (free == 0) return 0.0;
    if (auto it = memo.find(free); it != memo.end()) return it->second.value;
    if (memo.size() >= limits.max_states) throw OracleTooLarge("oracle state limit exceeded");
    const int d = std::countr_zero(free);
    Entry entry{self(self, free & ~(std::uint64_t{1} << d)), -1};
    for (std::size_t q : containing[d]) {
      if ((masks[q] & ~free) != 0) continue;
      const double value = cells[q].cost + self(self, free & ~masks[q]);
      if (value < entry.value) entry = {value, static_cast<std::int64_t>(q)};
    }
    memo[free] = entry;
    return entry.value;
  };

  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  OracleSolution solution;
  solution.feasible_cells = cells.size();
  best(best, all);

  std::uint64_t free = all;
  while (free != 0) {
    const Entry entry = memo.at(free);
    if (entry.choice < 0) {
      free &= ~(std::uint64_t{1} << std::countr_zero(free));
    } else {
      solution.cells.push_back(cells[entry.choice]);
      free &= ~masks[entry.choice];
    }
  }
  std::sort(solution.cells.begin(), solution.cells.end(),
            [](const CellColumn& a, const CellColumn& b) {
              return lexicographically_less(a.members, b.members);
            });
  for (const auto& c : solution.cells) solution.value += c.cost;
  return solution;
}

}  // namespace setpack
