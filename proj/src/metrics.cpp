#include "setpack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "setpack/hungarian.hpp"

namespace setpack {

namespace {

double overlap_volume(const Instance& instance, const MemberSet& a, const MemberSet& b) {
  double v = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) {
      v += instance.superpixel(*i).volume;
      ++i;
      ++j;
    } else if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return v;
}

double region_volume(const Instance& instance, const MemberSet& m) {
  double v = 0.0;
  for (SuperpixelId d : m) v += instance.superpixel(d).volume;
  return v;
}

bool shares_superpixel(const MemberSet& a, const MemberSet& b) {
  std::vector<SuperpixelId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return !common.empty();
}

}  // namespace

std::array<double, 3> region_centroid(const Instance& instance, const MemberSet& members) {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  double total = 0.0;
  for (SuperpixelId d : members) {
    const auto& sp = instance.superpixel(d);
    for (int k = 0; k < 3; ++k) c[k] += sp.volume * sp.centroid[k];
    total += sp.volume;
  }
  if (total > 0.0) {
    for (double& x : c) x /= total;
  }
  return c;
}

DetectionMetrics detection_metrics(std::span<const MemberSet> predicted,
                                   std::span<const MemberSet> truth, const Instance& instance) {
  const int rows = static_cast<int>(predicted.size());
  const int cols = static_cast<int>(truth.size());
  DetectionMetrics out;

  std::vector<double> distance(static_cast<std::size_t>(rows) * cols, 0.0);
  std::vector<char> allowed(distance.size(), 0);
  double total = 0.0;
  for (int r = 0; r < rows; ++r) {
    const auto cp = region_centroid(instance, predicted[r]);
    for (int c = 0; c < cols; ++c) {
      if (!shares_superpixel(predicted[r], truth[c])) continue;
      const auto ct = region_centroid(instance, truth[c]);
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (cp[k] - ct[k]) * (cp[k] - ct[k]);
      distance[r * cols + c] = std::sqrt(s);
      allowed[r * cols + c] = 1;
      total += distance[r * cols + c];
    }
  }
  // Forbidden pairs cost more than any set of allowed ones, so the assignment
  // maximizes the match count before minimizing distance.
  const double forbidden = 2.0 * total + 1.0;
  for (std::size_t i = 0; i < distance.size(); ++i) {
    if (!allowed[i]) distance[i] = forbidden;
  }
  const auto assignment = hungarian_assignment(distance, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const int c = assignment[r];
    if (c >= 0 && allowed[r * cols + c]) out.matches.emplace_back(r, c);
  }

  out.true_positives = out.matches.size();
  out.false_positives = predicted.size() - out.true_positives;
  out.false_negatives = truth.size() - out.true_positives;
  const double tp = static_cast<double>(out.true_positives);
  out.precision = predicted.empty() ? 1.0 : tp / static_cast<double>(predicted.size());
  out.recall = truth.empty() ? 1.0 : tp / static_cast<double>(truth.size());
  const double denom = out.precision + out.recall;
  out.f_score = denom > 0.0 ? 2.0 * out.precision * out.recall / denom : 0.0;
  return out;
}

SegmentationMetrics segmentation_metrics(
    std::span<const std::pair<std::size_t, std::size_t>> matches,
    std::span<const MemberSet> predicted, std::span<const MemberSet> truth,
    const Instance& instance) {
  SegmentationMetrics out;
  if (matches.empty()) return out;
  double dice = 0.0;
  double jaccard = 0.0;
  for (const auto& [p, t] : matches) {
    const double inter = overlap_volume(instance, predicted[p], truth[t]);
    const double vp = region_volume(instance, predicted[p]);
    const double vt = region_volume(instance, truth[t]);
    dice += 2.0 * inter / (vp + vt);
    jaccard += inter / (vp + vt - inter);
  }
  out.dice = dice / static_cast<double>(matches.size());
  out.jaccard = jaccard / static_cast<double>(matches.size());
  return out;
}

}  // namespace setpack
