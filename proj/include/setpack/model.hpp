#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace setpack {

using SuperpixelId = std::int32_t;
using MemberSet = std::vector<SuperpixelId>;  // always sorted, unique

struct Superpixel {
  SuperpixelId id = 0;
  std::array<double, 3> centroid{0.0, 0.0, 0.0};
  double volume = 1.0;
  double theta = 0.0;
};

struct PairCost {
  SuperpixelId a = 0;  // a < b
  SuperpixelId b = 0;
  double phi = 0.0;
};

struct InstanceData {
  int dims = 2;
  std::vector<Superpixel> superpixels;
  std::vector<PairCost> pairwise;
  double omega = 0.0;
  double max_radius = 0.0;
  double max_volume = 1.0;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Immutable problem instance. Construction validates the data; after that all
// accessors are const and safe to share between threads.
class Instance {
 public:
  explicit Instance(InstanceData data);

  int dims() const { return data_.dims; }
  std::size_t size() const { return data_.superpixels.size(); }
  const Superpixel& superpixel(SuperpixelId d) const { return data_.superpixels[d]; }
  const std::vector<Superpixel>& superpixels() const { return data_.superpixels; }
  const std::vector<PairCost>& pairwise() const { return data_.pairwise; }
  double omega() const { return data_.omega; }
  double max_radius() const { return data_.max_radius; }
  double max_volume() const { return data_.max_volume; }
  // Thresholds actually compared against. They exceed the stored limits by a
  // relative 1e-9 so that sums taken in different orders agree on feasibility.
  double radius_limit() const { return with_slack(data_.max_radius); }
  double volume_limit() const { return with_slack(data_.max_volume); }
  const InstanceData& data() const { return data_; }

  bool contains(SuperpixelId d) const {
    return d >= 0 && static_cast<std::size_t>(d) < size();
  }
  // phi on an unordered pair; 0 when absent or a == b.
  double phi(SuperpixelId a, SuperpixelId b) const;
  double distance(SuperpixelId a, SuperpixelId b) const;
  bool within_radius(SuperpixelId a, SuperpixelId b) const {
    return distance(a, b) <= radius_limit();
  }
  // Nonzero pairwise terms incident to d, sorted by neighbor id.
  std::span<const std::pair<SuperpixelId, double>> adjacent(SuperpixelId d) const {
    return adjacency_[d];
  }

 private:
  static double with_slack(double limit) { return limit + 1e-9 * std::max(1.0, limit); }

  InstanceData data_;
  std::unordered_map<std::uint64_t, double> phi_;
  std::vector<std::vector<std::pair<SuperpixelId, double>>> adjacency_;
};

struct CellColumn {
  MemberSet members;
  double cost = 0.0;
  MemberSet anchors;

  friend bool operator==(const CellColumn& a, const CellColumn& b) {
    return a.members == b.members;
  }
};

struct Triple {
  std::array<SuperpixelId, 3> members{};  // sorted, distinct

  static Triple make(SuperpixelId a, SuperpixelId b, SuperpixelId c);
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct DualValues {
  std::vector<double> lambda;  // one per superpixel
  std::vector<double> kappa;   // one per active triple, same order as the cut list

  double objective() const;  // -sum(lambda) - sum(kappa)
};

struct FractionalSolution {
  std::vector<double> gamma;  // one entry per pooled column
  double objective = 0.0;
};

struct FeasibilityResult {
  bool feasible = false;
  MemberSet anchors;
};

struct PackingCheck {
  bool valid = true;
  std::vector<SuperpixelId> violations;  // superpixels covered more than once
  double cost = 0.0;
};

MemberSet normalize_members(std::vector<SuperpixelId> members);

double cell_cost(const Instance& instance, std::span<const SuperpixelId> members);
FeasibilityResult feasible_cell(const Instance& instance, std::span<const SuperpixelId> members);
int triple_coefficient(const Triple& triple, std::span<const SuperpixelId> members);

// Builds a column with exact cost and anchors; throws InvalidArgument if the
// member set is not a feasible cell.
CellColumn make_cell(const Instance& instance, std::vector<SuperpixelId> members);

double reduced_cost(const CellColumn& cell, const DualValues& duals,
                    std::span<const Triple> cuts);

PackingCheck validate_packing(const Instance& instance, std::span<const CellColumn> cells);

bool lexicographically_less(const MemberSet& a, const MemberSet& b);

}  // namespace setpack
