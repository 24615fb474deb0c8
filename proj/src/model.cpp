#include "setpack/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace setpack {

namespace {

std::uint64_t pair_key(SuperpixelId a, SuperpixelId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

void require_known(const Instance& instance, std::span<const SuperpixelId> members) {
  for (SuperpixelId d : members) {
    if (!instance.contains(d)) {
      throw InvalidArgument("unknown superpixel id " + std::to_string(d));
    }
  }
}

}  // namespace

Instance::Instance(InstanceData data) : data_(std::move(data)) {
  if (data_.dims != 2 && data_.dims != 3) {
    throw InvalidArgument("dims must be 2 or 3");
  }
  if (!(data_.max_radius >= 0.0)) throw InvalidArgument("max_radius must be nonnegative");
  if (!(data_.max_volume > 0.0)) throw InvalidArgument("max_volume must be positive");

  const auto n = data_.superpixels.size();
  std::sort(data_.superpixels.begin(), data_.superpixels.end(),
            [](const Superpixel& x, const Superpixel& y) { return x.id < y.id; });
  for (std::size_t i = 1; i < n; ++i) {
    if (data_.superpixels[i - 1].id == data_.superpixels[i].id) {
      throw InvalidArgument("duplicate id " + std::to_string(data_.superpixels[i].id));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& sp = data_.superpixels[i];
    if (sp.id != static_cast<SuperpixelId>(i)) {
      throw InvalidArgument("superpixel ids must be dense and 0-based; missing id " +
                            std::to_string(i));
    }
    if (!(sp.volume > 0.0)) {
      throw InvalidArgument("nonpositive volume for id " + std::to_string(sp.id));
    }
  }

  adjacency_.assign(n, {});
  phi_.reserve(data_.pairwise.size() * 2);
  for (auto& p : data_.pairwise) {
    if (!contains(p.a) || !contains(p.b)) {
      throw InvalidArgument("dangling pair reference (" + std::to_string(p.a) + ", " +
                            std::to_string(p.b) + ")");
    }
    if (p.a == p.b) throw InvalidArgument("self pair on id " + std::to_string(p.a));
    if (p.a > p.b) std::swap(p.a, p.b);
    if (!phi_.emplace(pair_key(p.a, p.b), p.phi).second) {
      throw InvalidArgument("duplicate pair (" + std::to_string(p.a) + ", " +
                            std::to_string(p.b) + ")");
    }
    if (p.phi != 0.0) {
      adjacency_[p.a].emplace_back(p.b, p.phi);
      adjacency_[p.b].emplace_back(p.a, p.phi);
    }
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

double Instance::phi(SuperpixelId a, SuperpixelId b) const {
  if (a == b) return 0.0;
  auto it = phi_.find(pair_key(a, b));
  return it == phi_.end() ? 0.0 : it->second;
}

double Instance::distance(SuperpixelId a, SuperpixelId b) const {
  const auto& ca = data_.superpixels[a].centroid;
  const auto& cb = data_.superpixels[b].centroid;
  double sum = 0.0;
  for (int k = 0; k < data_.dims; ++k) {
    const double diff = ca[k] - cb[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

Triple Triple::make(SuperpixelId a, SuperpixelId b, SuperpixelId c) {
  Triple t{{a, b, c}};
  std::sort(t.members.begin(), t.members.end());
  if (t.members[0] == t.members[1] || t.members[1] == t.members[2]) {
    throw InvalidArgument("triple members must be distinct");
  }
  return t;
}

double DualValues::objective() const {
  return -std::accumulate(lambda.begin(), lambda.end(), 0.0) -
         std::accumulate(kappa.begin(), kappa.end(), 0.0);
}

MemberSet normalize_members(std::vector<SuperpixelId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

// Canonical evaluation order: ascending ids for unaries, then pairs (a < b)
// in lexicographic order. Every exact comparison in the library relies on it.
double cell_cost(const Instance& instance, std::span<const SuperpixelId> members) {
  require_known(instance, members);
  MemberSet sorted = normalize_members({members.begin(), members.end()});
  double cost = instance.omega();
  for (SuperpixelId d : sorted) cost += instance.superpixel(d).theta;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      cost += instance.phi(sorted[i], sorted[j]);
    }
  }
  return cost;
}

FeasibilityResult feasible_cell(const Instance& instance,
                                std::span<const SuperpixelId> members) {
  require_known(instance, members);
  FeasibilityResult result;
  MemberSet sorted = normalize_members({members.begin(), members.end()});
  if (sorted.empty()) return result;

  double volume = 0.0;
  for (SuperpixelId d : sorted) volume += instance.superpixel(d).volume;

  for (SuperpixelId candidate : sorted) {
    const bool covers = std::all_of(sorted.begin(), sorted.end(), [&](SuperpixelId d) {
      return instance.within_radius(candidate, d);
    });
    if (covers) result.anchors.push_back(candidate);
  }
  result.feasible = !result.anchors.empty() && volume <= instance.volume_limit();
  return result;
}

int triple_coefficient(const Triple& triple, std::span<const SuperpixelId> members) {
  int shared = 0;
  for (SuperpixelId t : triple.members) {
    if (std::find(members.begin(), members.end(), t) != members.end()) ++shared;
  }
  return shared >= 2 ? 1 : 0;
}

CellColumn make_cell(const Instance& instance, std::vector<SuperpixelId> members) {
  CellColumn cell;
  cell.members = normalize_members(std::move(members));
  auto check = feasible_cell(instance, cell.members);
  if (!check.feasible) {
    throw InvalidArgument("member set is not a feasible cell");
  }
  cell.cost = cell_cost(instance, cell.members);
  cell.anchors = std::move(check.anchors);
  return cell;
}

double reduced_cost(const CellColumn& cell, const DualValues& duals,
                    std::span<const Triple> cuts) {
  double value = cell.cost;
  for (SuperpixelId d : cell.members) value += duals.lambda[d];
  for (std::size_t c = 0; c < cuts.size() && c < duals.kappa.size(); ++c) {
    if (triple_coefficient(cuts[c], cell.members)) value += duals.kappa[c];
  }
  return value;
}

PackingCheck validate_packing(const Instance& instance, std::span<const CellColumn> cells) {
  PackingCheck check;
  std::vector<int> cover(instance.size(), 0);
  for (const auto& cell : cells) {
    if (!feasible_cell(instance, cell.members).feasible) {
      throw InvalidArgument("packing contains an infeasible cell");
    }
    check.cost += cell.cost;
    for (SuperpixelId d : cell.members) ++cover[d];
  }
  for (std::size_t d = 0; d < cover.size(); ++d) {
    if (cover[d] > 1) check.violations.push_back(static_cast<SuperpixelId>(d));
  }
  check.valid = check.violations.empty();
  return check;
}

bool lexicographically_less(const MemberSet& a, const MemberSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace setpack
