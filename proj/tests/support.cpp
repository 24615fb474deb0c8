#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <unistd.h>

namespace setpack::testing {

double naive_reduced_cost(const Instance& instance, const MemberSet& members,
                          const DualValues& duals, std::span<const Triple> cuts) {
  double value = instance.omega();
  for (std::size_t i = 0; i < members.size(); ++i) {
    value += instance.superpixel(members[i]).theta + duals.lambda[members[i]];
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      value += instance.phi(members[i], members[j]);
    }
  }
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    int shared = 0;
    for (SuperpixelId d : cuts[c].members) {
      shared += std::count(members.begin(), members.end(), d) > 0 ? 1 : 0;
    }
    if (shared >= 2) value += duals.kappa[c];
  }
  return value;
}

NaivePricing naive_price(const Instance& instance, const DualValues& duals,
                         std::span<const Triple> cuts, SuperpixelId anchor) {
  std::vector<SuperpixelId> others;
  for (SuperpixelId d = 0; d < static_cast<SuperpixelId>(instance.size()); ++d) {
    if (d != anchor && instance.within_radius(anchor, d)) others.push_back(d);
  }
  NaivePricing best;
  best.value = std::numeric_limits<double>::infinity();
  const std::uint64_t count = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    MemberSet members{anchor};
    double volume = instance.superpixel(anchor).volume;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (mask >> i & 1) {
        members.push_back(others[i]);
        volume += instance.superpixel(others[i]).volume;
      }
    }
    if (volume > instance.volume_limit()) continue;
    std::sort(members.begin(), members.end());
    const double value = naive_reduced_cost(instance, members, duals, cuts);
    const bool first = best.members.empty();
    const bool tie =
        !first && std::abs(value - best.value) <= 1e-12 * std::max(1.0, std::abs(best.value));
    if (first || (tie && members < best.members) || (!tie && value < best.value)) {
      best.members = members;
      best.value = value;
    }
  }
  return best;
}

std::vector<MemberSet> naive_feasible_cells(const Instance& instance) {
  const auto n = instance.size();
  std::vector<MemberSet> cells;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    MemberSet members;
    double volume = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      if (mask >> d & 1) {
        members.push_back(static_cast<SuperpixelId>(d));
        volume += instance.superpixel(static_cast<SuperpixelId>(d)).volume;
      }
    }
    if (volume > instance.volume_limit()) continue;
    const bool anchored = std::any_of(members.begin(), members.end(), [&](SuperpixelId a) {
      return std::all_of(members.begin(), members.end(), [&](SuperpixelId b) {
        return instance.within_radius(a, b);
      });
    });
    if (anchored) cells.push_back(members);
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

NaivePacking naive_best_packing(const Instance& instance, const std::vector<MemberSet>& cells) {
  const auto n = instance.size();
  // Cells grouped by their smallest member: each packing is generated once by
  // deciding, superpixel by superpixel, which cell (if any) it starts.
  std::vector<std::vector<std::size_t>> starting(n);
  std::vector<double> cost(cells.size());
  for (std::size_t q = 0; q < cells.size(); ++q) {
    starting[cells[q].front()].push_back(q);
    cost[q] = cell_cost(instance, cells[q]);
  }
  std::vector<char> used(n, 0);
  std::vector<std::size_t> stack;
  NaivePacking best;
  std::function<void(std::size_t, double)> visit = [&](std::size_t d, double value) {
    if (d == n) {
      if (value < best.value - 1e-12) {
        best.value = value;
        best.cells.clear();
        for (std::size_t q : stack) best.cells.push_back(cells[q]);
      }
      return;
    }
    visit(d + 1, value);
    if (used[d]) return;
    for (std::size_t q : starting[d]) {
      const auto& m = cells[q];
      if (std::any_of(m.begin(), m.end(), [&](SuperpixelId e) { return used[e] != 0; })) continue;
      for (SuperpixelId e : m) used[e] = 1;
      stack.push_back(q);
      visit(d + 1, value + cost[q]);
      stack.pop_back();
      for (SuperpixelId e : m) used[e] = 0;
    }
  };
  visit(0, 0.0);
  std::sort(best.cells.begin(), best.cells.end());
  return best;
}

bool pairwise_disjoint(std::span<const MemberSet> cells) {
  std::vector<SuperpixelId> all;
  for (const auto& c : cells) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

DualValues random_duals(const Instance& instance, std::size_t cut_count, std::mt19937_64& rng,
                        double scale) {
  std::uniform_real_distribution<double> value(0.0, scale);
  std::bernoulli_distribution zero(0.3);
  DualValues duals;
  for (std::size_t d = 0; d < instance.size(); ++d) {
    duals.lambda.push_back(zero(rng) ? 0.0 : value(rng));
  }
  for (std::size_t c = 0; c < cut_count; ++c) duals.kappa.push_back(zero(rng) ? 0.0 : value(rng));
  return duals;
}

std::vector<Triple> random_triples(const Instance& instance, std::size_t count,
                                   std::mt19937_64& rng) {
  std::vector<Triple> triples;
  if (instance.size() < 3) return triples;
  std::uniform_int_distribution<SuperpixelId> pick(0, static_cast<SuperpixelId>(instance.size()) - 1);
  while (triples.size() < count) {
    const SuperpixelId a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    const auto t = Triple::make(a, b, c);
    if (std::find(triples.begin(), triples.end(), t) == triples.end()) triples.push_back(t);
  }
  return triples;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("setpack-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace setpack::testing
