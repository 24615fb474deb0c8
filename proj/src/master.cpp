#include "setpack/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace setpack {

MasterLp::MasterLp(const Instance& instance, SimplexOptions options)
    : instance_(&instance), simplex_(options), superpixel_row_(instance.size(), -1) {}

int MasterLp::row_for(SuperpixelId d) {
  if (superpixel_row_[d] < 0) superpixel_row_[d] = simplex_.add_row();
  return superpixel_row_[d];
}

std::size_t MasterLp::add_columns(std::span<const CellColumn> columns) {
  std::size_t added = 0;
  std::vector<int> rows;
  for (const auto& column : columns) {
    if (!pooled_.insert(column.members).second) continue;
    rows.clear();
    for (SuperpixelId d : column.members) rows.push_back(row_for(d));
    for (std::size_t c = 0; c < problem_.cuts.size(); ++c) {
      if (triple_coefficient(problem_.cuts[c], column.members)) rows.push_back(cut_row_[c]);
    }
    simplex_.add_column(rows, column.cost);
    problem_.pool.push_back(column);
    ++added;
  }
  return added;
}

std::size_t MasterLp::add_cuts(std::span<const Triple> cuts) {
  std::size_t added = 0;
  std::vector<int> hits;
  for (const auto& cut : cuts) {
    if (std::find(problem_.cuts.begin(), problem_.cuts.end(), cut) != problem_.cuts.end()) {
      continue;
    }
    hits.clear();
    for (std::size_t q = 0; q < problem_.pool.size(); ++q) {
      if (triple_coefficient(cut, problem_.pool[q].members)) hits.push_back(static_cast<int>(q));
    }
    cut_row_.push_back(simplex_.add_row(hits));
    problem_.cuts.push_back(cut);
    ++added;
  }
  return added;
}

LpSolution MasterLp::solve() {
  simplex_.solve();
  LpSolution solution;
  solution.primal.gamma = simplex_.primal();
  solution.value = simplex_.objective();
  solution.primal.objective = solution.value;

  const auto row_duals = simplex_.row_duals();
  solution.duals.lambda.assign(instance_->size(), 0.0);
  for (std::size_t d = 0; d < instance_->size(); ++d) {
    if (superpixel_row_[d] >= 0) solution.duals.lambda[d] = row_duals[superpixel_row_[d]];
  }
  solution.duals.kappa.resize(cut_row_.size());
  for (std::size_t c = 0; c < cut_row_.size(); ++c) {
    solution.duals.kappa[c] = row_duals[cut_row_[c]];
  }
  return solution;
}

LpSolution solve_restricted_lp(const Instance& instance, const RestrictedProblem& problem) {
  MasterLp master(instance);
  master.add_cuts(problem.cuts);
  master.add_columns(problem.pool);
  if (master.problem().pool.size() != problem.pool.size()) {
    throw InvalidArgument("restricted problem pool contains duplicate cells");
  }
  return master.solve();
}

bool is_integral(const FractionalSolution& solution, double tol) {
  return std::all_of(solution.gamma.begin(), solution.gamma.end(),
                     [&](double g) { return g <= tol || g >= 1.0 - tol; });
}

namespace {

// Depth-first branch-and-bound for one connected component of the pool.
// Branches on which column covers a chosen superpixel (or none), bounding with
// a per-superpixel cost share first and the node LP second.
class PackingSearch {
 public:
  PackingSearch(const std::vector<const CellColumn*>& columns, std::size_t universe)
      : columns_(columns), owner_(universe, 0) {}

  double run(std::vector<int>& chosen) {
    std::vector<int> all(columns_.size());
    std::iota(all.begin(), all.end(), 0);
    best_value_ = 0.0;
    best_.clear();
    recurse(all, 0.0);
    chosen = best_;
    return best_value_;
  }

 private:
  static constexpr double kEps = 1e-9;

  double share_bound(const std::vector<int>& avail) {
    touched_.clear();
    for (int q : avail) {
      const auto& c = *columns_[q];
      const double share = c.cost / static_cast<double>(c.members.size());
      for (SuperpixelId d : c.members) {
        auto [it, inserted] = touched_.try_emplace(d, share);
        if (!inserted) it->second = std::min(it->second, share);
      }
    }
    double bound = 0.0;
    for (const auto& [d, share] : touched_) bound += std::min(0.0, share);
    return bound;
  }

  void record(double value) {
    if (value < best_value_ - kEps) {
      best_value_ = value;
      best_ = stack_;
    }
  }

  void recurse(const std::vector<int>& avail, double acc) {
    if (avail.empty()) {
      record(acc);
      return;
    }
    if (acc + share_bound(avail) >= best_value_ - kEps) return;

    // Node LP over the available columns.
    PackingSimplex lp;
    std::unordered_map<SuperpixelId, int> rows;
    std::vector<int> col_rows;
    for (int q : avail) {
      col_rows.clear();
      for (SuperpixelId d : columns_[q]->members) {
        auto [it, inserted] = rows.try_emplace(d, lp.rows());
        if (inserted) lp.add_row();
        col_rows.push_back(it->second);
      }
      lp.add_column(col_rows, columns_[q]->cost);
    }
    lp.solve();
    if (acc + lp.objective() >= best_value_ - kEps) return;
    const auto gamma = lp.primal();
    FractionalSolution frac{gamma, lp.objective()};
    if (is_integral(frac, 1e-9)) {
      const auto depth = stack_.size();
      double value = acc;
      for (std::size_t t = 0; t < avail.size(); ++t) {
        if (gamma[t] > 0.5) {
          stack_.push_back(avail[t]);
          value += columns_[avail[t]]->cost;
        }
      }
      record(value);
      stack_.resize(depth);
      return;
    }

    // Branch on a member of the most fractional column.
    std::size_t pick = 0;
    double closest = 2.0;
    for (std::size_t t = 0; t < avail.size(); ++t) {
      const double dist = std::abs(gamma[t] - 0.5);
      if (gamma[t] > 1e-9 && gamma[t] < 1.0 - 1e-9 && dist < closest) {
        closest = dist;
        pick = t;
      }
    }
    const SuperpixelId pivot = columns_[avail[pick]]->members.front();

    std::vector<std::size_t> covering;
    for (std::size_t t = 0; t < avail.size(); ++t) {
      const auto& m = columns_[avail[t]]->members;
      if (std::binary_search(m.begin(), m.end(), pivot)) covering.push_back(t);
    }
    std::stable_sort(covering.begin(), covering.end(),
                     [&](std::size_t a, std::size_t b) { return gamma[a] > gamma[b]; });

    std::vector<int> next;
    for (std::size_t t : covering) {
      const int q = avail[t];
      for (SuperpixelId d : columns_[q]->members) owner_[d] = 1;
      next.clear();
      for (int r : avail) {
        const auto& m = columns_[r]->members;
        if (std::none_of(m.begin(), m.end(), [&](SuperpixelId d) { return owner_[d] != 0; })) {
          next.push_back(r);
        }
      }
      for (SuperpixelId d : columns_[q]->members) owner_[d] = 0;
      stack_.push_back(q);
      recurse(next, acc + columns_[q]->cost);
      stack_.pop_back();
    }
    // Pivot superpixel left uncovered.
    next.clear();
    for (int r : avail) {
      const auto& m = columns_[r]->members;
      if (!std::binary_search(m.begin(), m.end(), pivot)) next.push_back(r);
    }
    recurse(next, acc);
  }

  const std::vector<const CellColumn*>& columns_;
  std::vector<char> owner_;
  std::unordered_map<SuperpixelId, double> touched_;
  std::vector<int> stack_;
  std::vector<int> best_;
  double best_value_ = 0.0;
};

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

IlpSolution solve_restricted_ilp(const Instance& instance, const RestrictedProblem& problem) {
  DisjointSets sets(instance.size());
  std::vector<const CellColumn*> useful;
  for (const auto& column : problem.pool) {
    if (!(column.cost < 0.0)) continue;  // never part of a strictly better packing
    useful.push_back(&column);
    for (std::size_t i = 1; i < column.members.size(); ++i) {
      sets.unite(column.members[0], column.members[i]);
    }
  }
  std::vector<int> roots;
  std::unordered_map<int, std::vector<const CellColumn*>> components;
  for (const auto* column : useful) {
    const int root = sets.find(column->members.front());
    auto [it, inserted] = components.try_emplace(root);
    if (inserted) roots.push_back(root);
    it->second.push_back(column);
  }

  IlpSolution solution;
  for (int root : roots) {
    const auto& columns = components[root];
    std::vector<int> chosen;
    if (columns.size() == 1) {
      chosen.push_back(0);
    } else {
      PackingSearch search(columns, instance.size());
      search.run(chosen);
    }
    for (int q : chosen) solution.cells.push_back(*columns[q]);
  }
  std::sort(solution.cells.begin(), solution.cells.end(),
            [](const CellColumn& a, const CellColumn& b) {
              return lexicographically_less(a.members, b.members);
            });
  for (const auto& cell : solution.cells) solution.value += cell.cost;
  return solution;
}

}  // namespace setpack
