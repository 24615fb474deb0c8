#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "setpack/fixtures.hpp"
#include "setpack/generator.hpp"
#include "setpack/model.hpp"
#include "support.hpp"

using namespace setpack;
using doctest::Approx;

TEST_SUITE("model") {

TEST_CASE("cell cost sums omega, unaries and each pair once") {
  const auto t1 = fixtures::line3();
  CHECK(cell_cost(t1, MemberSet{}) == Approx(0.2));
  CHECK(cell_cost(t1, MemberSet{0}) == Approx(-0.8));
  CHECK(cell_cost(t1, MemberSet{0, 1}) == Approx(-2.3));
  CHECK(cell_cost(t1, MemberSet{1, 2}) == Approx(-1.8));
  CHECK_THROWS_AS(cell_cost(t1, MemberSet{0, 7}), InvalidArgument);
}

TEST_CASE("feasibility requires an anchor and the volume limit") {
  const auto t1 = fixtures::line3();
  const auto pair = feasible_cell(t1, MemberSet{0, 1});
  CHECK(pair.feasible);
  CHECK(pair.anchors == MemberSet{0, 1});
  CHECK_FALSE(feasible_cell(t1, MemberSet{0, 2}).feasible);
  CHECK_FALSE(feasible_cell(t1, MemberSet{}).feasible);
  CHECK_FALSE(feasible_cell(t1, MemberSet{0, 1, 2}).feasible);  // volume 3 > 2

  const auto single = feasible_cell(t1, MemberSet{2});
  CHECK(single.feasible);
  CHECK(single.anchors == MemberSet{2});
}

TEST_CASE("triangle fixture keeps every pair within the radius") {
  const auto t2 = fixtures::triangle3();
  for (SuperpixelId a = 0; a < 3; ++a) {
    for (SuperpixelId b = 0; b < 3; ++b) CHECK(t2.within_radius(a, b));
  }
  CHECK(feasible_cell(t2, MemberSet{0, 2}).feasible);
  CHECK(cell_cost(t2, MemberSet{0, 1}) == Approx(-1.0));
  CHECK(cell_cost(t2, MemberSet{2}) == Approx(-0.25));
}

TEST_CASE("triple coefficient") {
  const auto t = Triple::make(2, 0, 1);
  CHECK(t.members == std::array<SuperpixelId, 3>{0, 1, 2});
  CHECK(triple_coefficient(t, MemberSet{0, 1}) == 1);
  CHECK(triple_coefficient(t, MemberSet{0}) == 0);
  CHECK(triple_coefficient(t, MemberSet{0, 1, 2}) == 1);
  CHECK(triple_coefficient(t, MemberSet{0, 5, 9}) == 0);
  CHECK_THROWS_AS(Triple::make(1, 1, 2), InvalidArgument);
}

TEST_CASE("reduced cost adds lambda and kappa") {
  const auto t1 = fixtures::line3();
  const auto cell = make_cell(t1, {1, 0});
  CHECK(cell.members == MemberSet{0, 1});
  CHECK(cell.cost == Approx(-2.3));

  DualValues zero{{0, 0, 0}, {}};
  CHECK(reduced_cost(cell, zero, {}) == Approx(-2.3));

  DualValues lam{{2.3, 0, 0}, {}};
  CHECK(reduced_cost(cell, lam, {}) == Approx(0.0));

  const std::vector<Triple> cuts{Triple::make(0, 1, 2)};
  DualValues kap{{0, 0, 0}, {0.5}};
  CHECK(reduced_cost(cell, kap, cuts) == Approx(-1.8));
}

TEST_CASE("dual objective") {
  DualValues duals{{0.8, 1.5, 0.8}, {0.5}};
  CHECK(duals.objective() == Approx(-3.6));
}

TEST_CASE("packing validation") {
  const auto t1 = fixtures::line3();
  const std::vector<CellColumn> best{make_cell(t1, {0, 1}), make_cell(t1, {2})};
  const auto ok = validate_packing(t1, best);
  CHECK(ok.valid);
  CHECK(ok.cost == Approx(-3.1));

  const std::vector<CellColumn> overlap{make_cell(t1, {0, 1}), make_cell(t1, {1, 2})};
  const auto bad = validate_packing(t1, overlap);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violations == std::vector<SuperpixelId>{1});

  const auto empty = validate_packing(t1, std::vector<CellColumn>{});
  CHECK(empty.valid);
  CHECK(empty.cost == 0.0);
}

TEST_CASE("make_cell rejects infeasible sets") {
  const auto t1 = fixtures::line3();
  CHECK_THROWS_AS(make_cell(t1, {0, 2}), InvalidArgument);
  CHECK_THROWS_AS(make_cell(t1, {}), InvalidArgument);
  CHECK(make_cell(t1, {0, 0}).members == MemberSet{0});
}

TEST_CASE("instance validation") {
  InstanceData data;
  data.superpixels = {{0, {0, 0, 0}, 1, 0}, {1, {1, 0, 0}, 1, 0}};
  data.max_radius = 1;
  data.max_volume = 2;
  SUBCASE("duplicate id") {
    data.superpixels[1].id = 0;
    CHECK_THROWS_WITH_AS(Instance{data}, doctest::Contains("duplicate id 0"), InvalidArgument);
  }
  SUBCASE("dangling pair") {
    data.pairwise = {{0, 4, 1.0}};
    CHECK_THROWS_AS(Instance{data}, InvalidArgument);
  }
  SUBCASE("duplicate pair") {
    data.pairwise = {{0, 1, 1.0}, {0, 1, 2.0}};
    CHECK_THROWS_AS(Instance{data}, InvalidArgument);
  }
  SUBCASE("nonpositive volume") {
    data.superpixels[0].volume = 0.0;
    CHECK_THROWS_AS(Instance{data}, InvalidArgument);
  }
  SUBCASE("valid") {
    data.pairwise = {{0, 1, -0.5}};
    const Instance inst(data);
    CHECK(inst.phi(1, 0) == -0.5);
    CHECK(inst.phi(0, 0) == 0.0);
    CHECK(inst.adjacent(1).size() == 1);
  }
}

TEST_CASE("cost is invariant under member permutation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance({9, static_cast<std::uint64_t>(trial)});
    std::vector<SuperpixelId> members{0, 1, 3, 4};
    const double base = cell_cost(inst, members);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(members.begin(), members.end(), rng);
      CHECK(cell_cost(inst, members) == Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("pair terms outside a cell do not change its cost") {
  InstanceData data = random_instance({9, 3}).data();
  const MemberSet cell{0, 1, 3};
  const double before = cell_cost(Instance(data), cell);
  // 4 and 8 are not both in the cell.
  data.pairwise.erase(std::remove_if(data.pairwise.begin(), data.pairwise.end(),
                                     [](const PairCost& p) { return p.a == 4 && p.b == 8; }),
                      data.pairwise.end());
  data.pairwise.push_back({4, 8, 3.5});
  data.pairwise.push_back({1, 7, -2.0});
  CHECK(cell_cost(Instance(data), cell) == Approx(before).epsilon(1e-12));
}

TEST_CASE("disjoint packings satisfy every triple") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<SuperpixelId> ids(12);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    // Split a random prefix into consecutive disjoint cells.
    std::vector<MemberSet> cells;
    std::size_t at = 0;
    std::uniform_int_distribution<int> len(1, 4);
    while (at < ids.size()) {
      const auto take = std::min<std::size_t>(len(rng), ids.size() - at);
      cells.push_back(normalize_members({ids.begin() + at, ids.begin() + at + take}));
      at += take;
    }
    std::uniform_int_distribution<SuperpixelId> pick(0, 11);
    for (int k = 0; k < 20; ++k) {
      SuperpixelId a = pick(rng), b = pick(rng), c = pick(rng);
      if (a == b || b == c || a == c) continue;
      const auto t = Triple::make(a, b, c);
      int load = 0;
      for (const auto& cell : cells) load += triple_coefficient(t, cell);
      CHECK(load <= 1);
    }
  }
}

TEST_CASE("feasible cells have anchors; singleton anchors itself") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = random_instance({9, seed});
    for (const auto& cell : testing::naive_feasible_cells(inst)) {
      const auto result = feasible_cell(inst, cell);
      REQUIRE(result.feasible);
      CHECK_FALSE(result.anchors.empty());
      if (cell.size() == 1) CHECK(result.anchors == cell);
    }
  }
}

}  // TEST_SUITE
