#pragma once

#include <limits>
#include <span>
#include <vector>

#include "setpack/model.hpp"

namespace setpack {

struct PricingResult {
  SuperpixelId anchor = 0;
  MemberSet best_members;  // empty when the anchor cannot form a cell
  double value = std::numeric_limits<double>::infinity();

  bool infeasible_anchor() const { return best_members.empty(); }
};

// Values closer than this (relative to max(1, |v|)) are ties, resolved toward
// the lexicographically smaller member set.
inline constexpr double kPricingTieTolerance = 1e-12;

// Exact pricing over every anchor of an instance. Neighborhoods are computed
// once at construction; the pricer itself is immutable and thread-safe.
class Pricer {
 public:
  explicit Pricer(const Instance& instance);

  const Instance& instance() const { return *instance_; }
  std::span<const SuperpixelId> neighborhood(SuperpixelId anchor) const {
    return neighborhoods_[anchor];
  }

  PricingResult price_anchor(const DualValues& duals, std::span<const Triple> cuts,
                             SuperpixelId anchor) const;

  // All anchors, in anchor order. `threads` <= 0 means the OpenMP default.
  std::vector<PricingResult> price_all(const DualValues& duals, std::span<const Triple> cuts,
                                       int threads = 0) const;
  // Single-threaded reference for price_all.
  std::vector<PricingResult> price_all_serial(const DualValues& duals,
                                              std::span<const Triple> cuts) const;

 private:
  struct CutIndex;
  PricingResult price_with_index(const DualValues& duals, std::span<const Triple> cuts,
                                 const CutIndex& index, SuperpixelId anchor) const;

  const Instance* instance_;
  std::vector<MemberSet> neighborhoods_;
};

MemberSet neighborhood(const Instance& instance, SuperpixelId anchor);

PricingResult price_anchor(const Instance& instance, const DualValues& duals,
                           std::span<const Triple> cuts, SuperpixelId anchor);

// Cells with pricing value below -eps_rc, materialized, sorted by member set
// and deduplicated.
std::vector<CellColumn> columns_from_pricing(const Instance& instance,
                                             std::span<const PricingResult> results,
                                             double eps_rc);

std::vector<CellColumn> generate_columns(const Instance& instance, const DualValues& duals,
                                         std::span<const Triple> cuts, double eps_rc = 1e-9,
                                         int threads = 1);

DualValues zero_duals(const Instance& instance, std::size_t cut_count = 0);

}  // namespace setpack
