#include "doctest.h"
#include "setpack/engine.hpp"
#include "setpack/generator.hpp"
#include "setpack/io.hpp"
#include "setpack/oracle.hpp"
#include "support.hpp"

using namespace setpack;

namespace {

double planted_cost(const GeneratedInstance& g) {
  std::vector<CellColumn> cells;
  for (const auto& m : g.truth.cells) cells.push_back(make_cell(g.instance, m));
  const auto check = validate_packing(g.instance, cells);
  REQUIRE(check.valid);
  return check.cost;
}

}  // namespace

TEST_SUITE("generator") {

TEST_CASE("same seed gives byte-identical files") {
  GeneratorParams params;
  params.seed = 42;
  params.noise = 0.4;
  const auto a = generate_instance(params);
  const auto b = generate_instance(params);
  CHECK(write_instance(a.instance, &a.truth) == write_instance(b.instance, &b.truth));
  params.seed = 43;
  const auto c = generate_instance(params);
  CHECK(write_instance(a.instance, &a.truth) != write_instance(c.instance, &c.truth));
}

TEST_CASE("requested sizes") {
  GeneratorParams params;
  params.n_superpixels = 100;
  params.n_planted_cells = 5;
  const auto g = generate_instance(params);
  CHECK(g.instance.size() == 100);
  CHECK(g.truth.cells.size() == 5);
  CHECK(testing::pairwise_disjoint(g.truth.cells));
  std::size_t covered = g.truth.background.size();
  for (const auto& c : g.truth.cells) covered += c.size();
  CHECK(covered == 100);
}

TEST_CASE("planted cells are feasible and attractive") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams params;
    params.n_superpixels = 150;
    params.n_planted_cells = 4;
    params.cell_radius = 2.0;
    params.seed = seed;
    const auto g = generate_instance(params);
    for (const auto& cell : g.truth.cells) {
      CHECK(feasible_cell(g.instance, cell).feasible);
      CHECK(cell_cost(g.instance, cell) < 0.0);
    }
  }
}

TEST_CASE("optimum is no worse than the planted packing") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams params;
    params.n_superpixels = 36;
    params.n_planted_cells = 2;
    params.cell_radius = 1.2;
    params.seed = seed;
    const auto small = generate_instance(params);
    CHECK(oracle_solve(small.instance).value <= planted_cost(small) + 1e-9);

    params.n_superpixels = 200;
    params.n_planted_cells = 5;
    params.cell_radius = 2.0;
    const auto large = generate_instance(params);
    const auto report = solve(large.instance);
    CHECK(report.certified);
    CHECK(report.objective <= planted_cost(large) + 1e-9);
  }
}

TEST_CASE("impossible placements are refused") {
  GeneratorParams params;
  params.n_superpixels = 25;
  params.n_planted_cells = 10;
  params.cell_radius = 2.0;
  CHECK_THROWS_AS(generate_instance(params), InvalidArgument);
  params.n_superpixels = 0;
  CHECK_THROWS_AS(generate_instance(params), InvalidArgument);
}

TEST_CASE("random instances follow their parameters") {
  const auto inst = random_instance({9, 5});
  CHECK(inst.size() == 9);
  CHECK(inst.max_volume() == 4.0);
  CHECK(inst.omega() >= 0.0);
  CHECK(inst.omega() <= 1.0);
  for (const auto& s : inst.superpixels()) {
    CHECK(s.theta >= -2.0);
    CHECK(s.theta <= 1.0);
  }
  for (const auto& p : inst.pairwise()) {
    CHECK(p.phi >= -1.0);
    CHECK(p.phi <= 1.0);
  }
}

}  // TEST_SUITE
