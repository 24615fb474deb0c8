#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "setpack/model.hpp"

// Reference computations written independently of the library's solvers.
namespace setpack::testing {

// Reduced cost summed straight from the definitions, in member order.
double naive_reduced_cost(const Instance& instance, const MemberSet& members,
                          const DualValues& duals, std::span<const Triple> cuts);

struct NaivePricing {
  MemberSet members;  // empty when the anchor alone exceeds the volume limit
  double value = 0.0;
};

// Tries every subset of the anchor's ball that contains the anchor.
NaivePricing naive_price(const Instance& instance, const DualValues& duals,
                         std::span<const Triple> cuts, SuperpixelId anchor);

// Every feasible cell, found by testing every subset of the superpixels.
std::vector<MemberSet> naive_feasible_cells(const Instance& instance);

struct NaivePacking {
  std::vector<MemberSet> cells;
  double value = 0.0;
};

// Minimum-cost packing of the given cells by exhaustive search.
NaivePacking naive_best_packing(const Instance& instance, const std::vector<MemberSet>& cells);

bool pairwise_disjoint(std::span<const MemberSet> cells);

DualValues random_duals(const Instance& instance, std::size_t cut_count, std::mt19937_64& rng,
                        double scale = 2.0);
std::vector<Triple> random_triples(const Instance& instance, std::size_t count,
                                   std::mt19937_64& rng);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace setpack::testing
