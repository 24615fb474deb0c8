#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "setpack/fixtures.hpp"
#include "setpack/generator.hpp"
#include "setpack/hungarian.hpp"
#include "setpack/metrics.hpp"

using namespace setpack;
using doctest::Approx;

namespace {

Instance unit_line(int n) {
  InstanceData data;
  for (int i = 0; i < n; ++i) data.superpixels.push_back({i, {double(i), 0, 0}, 1.0, 0.0});
  data.max_radius = 1.0;
  data.max_volume = 2.0;
  return Instance(std::move(data));
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("hungarian matches brute force") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + trial % 5;
    const int cols = 1 + (trial / 5) % 5;
    std::vector<double> cost(rows * cols);
    for (auto& c : cost) c = u(rng);
    const auto got = hungarian_assignment(cost, rows, cols);
    REQUIRE(static_cast<int>(got.size()) == rows);
    double got_total = 0.0;
    std::vector<char> used(cols, 0);
    int assigned = 0;
    for (int r = 0; r < rows; ++r) {
      if (got[r] < 0) continue;
      CHECK_FALSE(used[got[r]]);
      used[got[r]] = 1;
      got_total += cost[r * cols + got[r]];
      ++assigned;
    }
    CHECK(assigned == std::min(rows, cols));

    // Best over all injective maps of the smaller side.
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> perm(std::max(rows, cols));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double total = 0.0;
      for (int i = 0; i < std::min(rows, cols); ++i) {
        total += rows <= cols ? cost[i * cols + perm[i]] : cost[perm[i] * cols + i];
      }
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got_total == Approx(best));
  }
}

TEST_CASE("detection examples") {
  const auto inst = unit_line(6);
  const std::vector<MemberSet> truth{{0, 1}, {3, 4}};

  auto m = detection_metrics(truth, truth, inst);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f_score == 1.0);

  m = detection_metrics(std::vector<MemberSet>{}, truth, inst);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f_score == 0.0);

  const std::vector<MemberSet> one{{3, 4}};
  m = detection_metrics(one, truth, inst);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 0.5);
  CHECK(m.f_score == Approx(2.0 / 3.0));
  REQUIRE(m.matches.size() == 1);
  CHECK(m.matches[0] == std::pair<std::size_t, std::size_t>{0, 1});

  const std::vector<MemberSet> stray{{5}};
  m = detection_metrics(stray, truth, inst);
  CHECK(m.precision == 0.0);
  CHECK(m.false_positives == 1);
  CHECK(m.f_score == 0.0);
}

TEST_CASE("overlap is required and match count comes first") {
  const auto inst = unit_line(6);
  // Prediction {1,2} overlaps both truths; {3} only the second. The maximum
  // matching pairs {1,2} with {0,1} even though {1,2}-{3,4} is closer.
  const std::vector<MemberSet> truth{{0, 1}, {2, 3, 4}};
  const std::vector<MemberSet> pred{{1, 2}, {4}};
  const auto m = detection_metrics(pred, truth, inst);
  CHECK(m.true_positives == 2);
  CHECK(m.f_score == 1.0);
}

TEST_CASE("segmentation examples") {
  const auto inst = unit_line(4);
  const std::vector<MemberSet> a{{0, 1}};
  const std::vector<MemberSet> b{{1, 2}};
  const std::vector<std::pair<std::size_t, std::size_t>> match{{0, 0}};
  auto s = segmentation_metrics(match, a, a, inst);
  CHECK(*s.dice == 1.0);
  CHECK(*s.jaccard == 1.0);
  s = segmentation_metrics(match, a, b, inst);
  CHECK(*s.jaccard == Approx(1.0 / 3.0));
  CHECK(*s.dice == Approx(0.5));
  s = segmentation_metrics({}, a, b, inst);
  CHECK_FALSE(s.dice.has_value());
  CHECK_FALSE(s.jaccard.has_value());
}

TEST_CASE("volume-weighted centroid") {
  InstanceData data;
  data.superpixels = {{0, {0, 0, 0}, 1.0, 0}, {1, {4, 0, 0}, 3.0, 0}};
  data.max_radius = 5;
  data.max_volume = 5;
  const Instance inst(data);
  const auto c = region_centroid(inst, {0, 1});
  CHECK(c[0] == Approx(3.0));
  CHECK(c[1] == Approx(0.0));
}

TEST_CASE("detection is invariant under relabeling and bounded") {
  std::mt19937_64 rng(9);
  GeneratorParams params;
  params.n_superpixels = 100;
  params.n_planted_cells = 5;
  const auto g = generate_instance(params);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MemberSet> pred;
    std::uniform_int_distribution<SuperpixelId> pick(0, 99);
    std::uniform_int_distribution<int> size(1, 8);
    for (int k = 0, n = 1 + trial % 7; k < n; ++k) {
      MemberSet cell;
      for (int i = 0, s = size(rng); i < s; ++i) cell.push_back(pick(rng));
      pred.push_back(normalize_members(cell));
    }
    const auto base = detection_metrics(pred, g.truth.cells, g.instance);
    CHECK(base.f_score <= 1.0);
    CHECK(base.precision <= 1.0);
    CHECK(base.recall <= 1.0);
    auto shuffled_pred = pred;
    auto shuffled_truth = g.truth.cells;
    std::shuffle(shuffled_pred.begin(), shuffled_pred.end(), rng);
    std::shuffle(shuffled_truth.begin(), shuffled_truth.end(), rng);
    const auto other = detection_metrics(shuffled_pred, shuffled_truth, g.instance);
    CHECK(other.true_positives == base.true_positives);
    CHECK(other.f_score == Approx(base.f_score));
  }
}

}  // TEST_SUITE
