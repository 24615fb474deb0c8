#include "setpack/pricing.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace setpack {

struct Pricer::CutIndex {
  std::vector<std::vector<int>> by_superpixel;  // cut ids touching each superpixel
};

namespace {

bool ties(double a, double b) {
  return std::abs(a - b) <= kPricingTieTolerance * std::max(1.0, std::abs(b));
}

// Depth-first subset enumeration over a neighborhood with the anchor fixed in.
// Node = current subset; children add one later candidate in the fixed order.
class AnchorSearch {
 public:
  AnchorSearch(const Instance& instance, const DualValues& duals,
               std::span<const Triple> cuts, const std::vector<int>& touching_cuts,
               SuperpixelId anchor, std::span<const SuperpixelId> hood)
      : instance_(instance), capacity_(instance.volume_limit()) {
    const double anchor_volume = instance.superpixel(anchor).volume;
    ids_.push_back(anchor);
    for (SuperpixelId d : hood) {
      if (d != anchor && anchor_volume + instance.superpixel(d).volume <= capacity_) {
        ids_.push_back(d);
      }
    }
    const int n = static_cast<int>(ids_.size());

    unary_.resize(n);
    volume_.resize(n);
    for (int i = 0; i < n; ++i) {
      unary_[i] = instance.superpixel(ids_[i]).theta + duals.lambda[ids_[i]];
      volume_[i] = instance.superpixel(ids_[i]).volume;
    }
    sort_index();

    pair_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (const auto& [other, phi] : instance.adjacent(ids_[i])) {
        const int j = local_of(other);
        if (j >= 0) pair_[i * n + j] = phi;
      }
    }

    // Candidate order: most attractive marginal given the anchor first.
    order_.resize(n - 1);
    std::iota(order_.begin(), order_.end(), 1);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return unary_[a] + pair_[a] < unary_[b] + pair_[b];
    });

    cut_members_of_.assign(n, {});
    for (int c : touching_cuts) {
      int inside = 0;
      std::array<int, 3> local{};
      for (int k = 0; k < 3; ++k) {
        local[k] = local_of(cuts[c].members[k]);
        if (local[k] >= 0) ++inside;
      }
      if (inside < 2 || c >= static_cast<int>(duals.kappa.size())) continue;
      const double kappa = duals.kappa[c];
      if (kappa == 0.0) continue;
      const int slot = static_cast<int>(cut_kappa_.size());
      cut_kappa_.push_back(kappa);
      for (int k = 0; k < 3; ++k) {
        if (local[k] >= 0) cut_members_of_[local[k]].push_back(slot);
      }
    }
    cut_count_.assign(cut_kappa_.size(), 0);

    // Optimistic pair contribution of each candidate with the ones after it.
    const int m = n - 1;
    neg_after_.assign(m, 0.0);
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        neg_after_[p] += std::min(0.0, pair_[order_[p] * n + order_[q]]);
      }
    }

    marginal_.resize(n);
    for (int i = 0; i < n; ++i) marginal_[i] = unary_[i] + pair_[i];  // row 0 = anchor
    chosen_.assign(n, 0);
    chosen_[0] = 1;
    for (int slot : cut_members_of_[0]) ++cut_count_[slot];
  }

  PricingResult run(SuperpixelId anchor) {
    current_value_ = instance_.omega() + unary_[0];
    used_volume_ = volume_[0];
    best_value_ = current_value_;
    best_sorted_.assign({anchor});
    descend(0);

    PricingResult result;
    result.anchor = anchor;
    result.best_members = best_sorted_;
    return result;
  }

 private:
  int local_of(SuperpixelId d) const {
    auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), std::pair{d, -1});
    return (it != sorted_ids_.end() && it->first == d) ? it->second : -1;
  }

  void sort_index() {
    sorted_ids_.clear();
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) sorted_ids_.emplace_back(ids_[i], i);
    std::sort(sorted_ids_.begin(), sorted_ids_.end());
  }

  MemberSet current_sorted() const {
    MemberSet set;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (chosen_[i]) set.push_back(ids_[i]);
    }
    std::sort(set.begin(), set.end());
    return set;
  }

  void consider_current() {
    if (ties(current_value_, best_value_)) {
      MemberSet mine = current_sorted();
      if (!lexicographically_less(mine, best_sorted_)) return;
      best_sorted_ = std::move(mine);
    } else if (current_value_ < best_value_) {
      best_sorted_ = current_sorted();
    } else {
      return;
    }
    best_value_ = current_value_;
  }

  void include(int i) {
    const int n = static_cast<int>(ids_.size());
    chosen_[i] = 1;
    double delta = marginal_[i];
    for (int slot : cut_members_of_[i]) {
      if (++cut_count_[slot] == 2) delta += cut_kappa_[slot];
    }
    current_value_ += delta;
    used_volume_ += volume_[i];
    for (int j = 0; j < n; ++j) marginal_[j] += pair_[i * n + j];
    undo_.push_back(delta);
  }

  void exclude(int i) {
    const int n = static_cast<int>(ids_.size());
    chosen_[i] = 0;
    for (int slot : cut_members_of_[i]) --cut_count_[slot];
    current_value_ -= undo_.back();
    undo_.pop_back();
    used_volume_ -= volume_[i];
    for (int j = 0; j < n; ++j) marginal_[j] -= pair_[i * n + j];
  }

  void descend(std::size_t from) {
    for (std::size_t p = from; p < order_.size(); ++p) {
      const int i = order_[p];
      if (used_volume_ + volume_[i] > capacity_) continue;
      // Bound over every subset whose next inclusion is candidate p.
      const double bound = current_value_ + marginal_[i] + optimistic_after_include(i, p);
      if (bound > best_value_ && !ties(bound, best_value_)) continue;
      include(i);
      consider_current();
      descend(p + 1);
      exclude(i);
    }
  }

  double optimistic_after_include(int i, std::size_t p) const {
    const int n = static_cast<int>(ids_.size());
    double bound = 0.0;
    const double room = capacity_ - used_volume_ - volume_[i];
    for (std::size_t q = p + 1; q < order_.size(); ++q) {
      const int j = order_[q];
      if (volume_[j] > room) continue;
      bound += std::min(0.0, marginal_[j] + pair_[i * n + j] + neg_after_[q]);
    }
    return bound;
  }

  const Instance& instance_;
  double capacity_;
  std::vector<SuperpixelId> ids_;  // local index -> global id; 0 is the anchor
  std::vector<std::pair<SuperpixelId, int>> sorted_ids_;
  std::vector<double> unary_;
  std::vector<double> volume_;
  std::vector<double> pair_;
  std::vector<int> order_;
  std::vector<double> neg_after_;
  std::vector<std::vector<int>> cut_members_of_;
  std::vector<double> cut_kappa_;
  std::vector<int> cut_count_;

  std::vector<double> marginal_;
  std::vector<char> chosen_;
  std::vector<double> undo_;
  double current_value_ = 0.0;
  double used_volume_ = 0.0;
  double best_value_ = 0.0;
  MemberSet best_sorted_;
};

}  // namespace

MemberSet neighborhood(const Instance& instance, SuperpixelId anchor) {
  MemberSet hood;
  for (SuperpixelId d = 0; d < static_cast<SuperpixelId>(instance.size()); ++d) {
    if (instance.within_radius(anchor, d)) hood.push_back(d);
  }
  return hood;
}

Pricer::Pricer(const Instance& instance) : instance_(&instance) {
  const auto n = instance.size();
  neighborhoods_.resize(n);
  // Bucket centroids on a grid of cell size radius_limit so each query only
  // scans nearby buckets.
  const double cell = instance.max_radius() > 0.0 ? instance.radius_limit() : 1.0;
  std::unordered_map<std::uint64_t, std::vector<SuperpixelId>> buckets;
  auto coord = [&](double x) { return static_cast<std::int64_t>(std::floor(x / cell)); };
  auto key = [](std::int64_t x, std::int64_t y, std::int64_t z) {
    return (static_cast<std::uint64_t>(x & 0x1FFFFF) << 42) |
           (static_cast<std::uint64_t>(y & 0x1FFFFF) << 21) |
           static_cast<std::uint64_t>(z & 0x1FFFFF);
  };
  const int dims = instance.dims();
  for (SuperpixelId d = 0; d < static_cast<SuperpixelId>(n); ++d) {
    const auto& c = instance.superpixel(d).centroid;
    buckets[key(coord(c[0]), coord(c[1]), dims == 3 ? coord(c[2]) : 0)].push_back(d);
  }
  for (SuperpixelId d = 0; d < static_cast<SuperpixelId>(n); ++d) {
    const auto& c = instance.superpixel(d).centroid;
    const auto bx = coord(c[0]), by = coord(c[1]), bz = dims == 3 ? coord(c[2]) : 0;
    const int zspan = dims == 3 ? 1 : 0;
    auto& hood = neighborhoods_[d];
    for (std::int64_t x = bx - 1; x <= bx + 1; ++x) {
      for (std::int64_t y = by - 1; y <= by + 1; ++y) {
        for (std::int64_t z = bz - zspan; z <= bz + zspan; ++z) {
          auto it = buckets.find(key(x, y, z));
          if (it == buckets.end()) continue;
          for (SuperpixelId e : it->second) {
            if (instance.within_radius(d, e)) hood.push_back(e);
          }
        }
      }
    }
    std::sort(hood.begin(), hood.end());
    hood.erase(std::unique(hood.begin(), hood.end()), hood.end());
  }
}

PricingResult Pricer::price_with_index(const DualValues& duals, std::span<const Triple> cuts,
                                       const CutIndex& index, SuperpixelId anchor) const {
  const Instance& inst = *instance_;
  if (inst.superpixel(anchor).volume > inst.volume_limit()) {
    return PricingResult{anchor, {}, std::numeric_limits<double>::infinity()};
  }
  const auto& hood = neighborhoods_[anchor];
  std::vector<int> touching;
  if (!cuts.empty()) {
    for (SuperpixelId d : hood) {
      const auto& list = index.by_superpixel[d];
      touching.insert(touching.end(), list.begin(), list.end());
    }
    std::sort(touching.begin(), touching.end());
    touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
  }
  AnchorSearch search(inst, duals, cuts, touching, anchor, hood);
  PricingResult result = search.run(anchor);
  CellColumn cell = make_cell(inst, result.best_members);
  result.value = reduced_cost(cell, duals, cuts);
  return result;
}

PricingResult Pricer::price_anchor(const DualValues& duals, std::span<const Triple> cuts,
                                   SuperpixelId anchor) const {
  if (!instance_->contains(anchor)) {
    throw InvalidArgument("unknown anchor " + std::to_string(anchor));
  }
  CutIndex index;
  index.by_superpixel.resize(instance_->size());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    for (SuperpixelId d : cuts[c].members) index.by_superpixel[d].push_back(static_cast<int>(c));
  }
  return price_with_index(duals, cuts, index, anchor);
}

std::vector<PricingResult> Pricer::price_all_serial(const DualValues& duals,
                                                    std::span<const Triple> cuts) const {
  CutIndex index;
  index.by_superpixel.resize(instance_->size());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    for (SuperpixelId d : cuts[c].members) index.by_superpixel[d].push_back(static_cast<int>(c));
  }
  std::vector<PricingResult> results(instance_->size());
  for (SuperpixelId d = 0; d < static_cast<SuperpixelId>(results.size()); ++d) {
    results[d] = price_with_index(duals, cuts, index, d);
  }
  return results;
}

std::vector<PricingResult> Pricer::price_all(const DualValues& duals,
                                             std::span<const Triple> cuts,
                                             int threads) const {
  CutIndex index;
  index.by_superpixel.resize(instance_->size());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    for (SuperpixelId d : cuts[c].members) index.by_superpixel[d].push_back(static_cast<int>(c));
  }
  const auto n = static_cast<std::int64_t>(instance_->size());
  std::vector<PricingResult> results(n);
  const int team = threads > 0 ? threads : omp_get_max_threads();
  // Each anchor writes only its own slot, so the output is independent of the
  // schedule and the thread count.
#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
  for (std::int64_t d = 0; d < n; ++d) {
    results[d] = price_with_index(duals, cuts, index, static_cast<SuperpixelId>(d));
  }
  return results;
}

PricingResult price_anchor(const Instance& instance, const DualValues& duals,
                           std::span<const Triple> cuts, SuperpixelId anchor) {
  return Pricer(instance).price_anchor(duals, cuts, anchor);
}

std::vector<CellColumn> columns_from_pricing(const Instance& instance,
                                             std::span<const PricingResult> results,
                                             double eps_rc) {
  std::vector<MemberSet> sets;
  for (const auto& r : results) {
    if (!r.infeasible_anchor() && r.value < -eps_rc) sets.push_back(r.best_members);
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<CellColumn> columns;
  columns.reserve(sets.size());
  for (auto& s : sets) columns.push_back(make_cell(instance, std::move(s)));
  return columns;
}

std::vector<CellColumn> generate_columns(const Instance& instance, const DualValues& duals,
                                         std::span<const Triple> cuts, double eps_rc,
                                         int threads) {
  Pricer pricer(instance);
  auto results = threads == 1 ? pricer.price_all_serial(duals, cuts)
                              : pricer.price_all(duals, cuts, threads);
  return columns_from_pricing(instance, results, eps_rc);
}

DualValues zero_duals(const Instance& instance, std::size_t cut_count) {
  return DualValues{std::vector<double>(instance.size(), 0.0),
                    std::vector<double>(cut_count, 0.0)};
}

}  // namespace setpack
