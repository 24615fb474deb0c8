#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "setpack/model.hpp"

namespace setpack {

struct DetectionMetrics {
  double precision = 1.0;
  double recall = 1.0;
  double f_score = 1.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (predicted, truth)
};

struct SegmentationMetrics {
  std::optional<double> dice;     // mean over matched pairs; absent without matches
  std::optional<double> jaccard;
};

// Volume-weighted centroid of a set of superpixels.
std::array<double, 3> region_centroid(const Instance& instance, const MemberSet& members);

// Candidate matches share at least one superpixel; among them the assignment
// minimizes total centroid distance after maximizing the number of matches.
// With no predictions precision is 1 (no false positives).
DetectionMetrics detection_metrics(std::span<const MemberSet> predicted,
                                   std::span<const MemberSet> truth, const Instance& instance);

SegmentationMetrics segmentation_metrics(
    std::span<const std::pair<std::size_t, std::size_t>> matches,
    std::span<const MemberSet> predicted, std::span<const MemberSet> truth,
    const Instance& instance);

}  // namespace setpack
