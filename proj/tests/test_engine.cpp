#include <algorithm>

#include "doctest.h"
#include "setpack/bounds.hpp"
#include "setpack/engine.hpp"
#include "setpack/fixtures.hpp"
#include "setpack/generator.hpp"
#include "setpack/oracle.hpp"

using namespace setpack;
using doctest::Approx;

namespace {

std::vector<MemberSet> members_of(const std::vector<CellColumn>& cells) {
  std::vector<MemberSet> out;
  for (const auto& c : cells) out.push_back(c.members);
  return out;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("line fixture certifies without cuts") {
  const auto report = solve(fixtures::line3());
  CHECK(report.certified);
  CHECK(report.converged);
  CHECK(report.objective == Approx(-3.1));
  CHECK(members_of(report.cells) == std::vector<MemberSet>{{0, 1}, {2}});
  CHECK(report.problem.cuts.empty());
  CHECK(report.iterations.size() <= 3);
  CHECK(report.normalized_gap == Approx(0.0).epsilon(1e-9));
}

TEST_CASE("triangle fixture needs exactly one triple") {
  const auto report = solve(fixtures::triangle3());
  CHECK(report.certified);
  CHECK(report.objective == Approx(-1.25));
  REQUIRE(report.problem.cuts.size() == 1);
  CHECK(report.problem.cuts[0] == Triple::make(0, 1, 2));
  bool saw_fractional = false;
  for (const auto& it : report.iterations) {
    if (it.cuts_added == 1 && it.cut_count == 1 && std::abs(it.lp_value + 1.5) < 1e-9) saw_fractional = true;
  }
  CHECK(saw_fractional);
  CHECK(report.final_lp_value == Approx(-1.25));
}

TEST_CASE("no attractive cell gives the empty packing") {
  InstanceData data = fixtures::line3().data();
  for (auto& s : data.superpixels) s.theta = 0.5;
  data.pairwise.clear();
  const auto report = solve(Instance(data));
  CHECK(report.certified);
  CHECK(report.cells.empty());
  CHECK(report.objective == 0.0);
  CHECK(report.iterations.size() == 1);
}

TEST_CASE("certified runs equal the oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_instance({static_cast<int>(4 + seed % 9), seed});
    const auto report = solve(inst);
    REQUIRE(report.certified);
    CHECK(report.objective == Approx(oracle_solve(inst).value).epsilon(1e-9));
    CHECK(validate_packing(inst, report.cells).valid);
    CHECK(report.lower_bound <= report.objective + 1e-9);
  }
}

TEST_CASE("iteration records are consistent") {
  GeneratorParams params;
  params.n_superpixels = 150;
  params.n_planted_cells = 4;
  params.noise = 1.0;
  params.seed = 12;
  const auto g = generate_instance(params);
  std::vector<IterationRecord> seen;
  const auto report = solve(g.instance, {}, [&](const IterationRecord& r) { seen.push_back(r); });
  REQUIRE(report.converged);
  REQUIRE(seen.size() == report.iterations.size());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    CHECK(seen[i].iteration == static_cast<int>(i) + 1);
    CHECK(seen[i].best_ub >= seen[i].lagrangian_lb - 1e-9);
    CHECK(seen[i].best_ub >= seen[i].best_lb - 1e-9);
    if (i > 0) {
      CHECK(seen[i].best_lb >= seen[i - 1].best_lb);
      CHECK(seen[i].best_ub <= seen[i - 1].best_ub);
      // The LP only moves up when the previous iteration added a cut.
      if (seen[i - 1].cuts_added == 0) CHECK(seen[i].lp_value <= seen[i - 1].lp_value + 1e-9);
      else CHECK(seen[i].lp_value >= seen[i - 1].lp_value - 1e-9);
    }
  }
  CHECK(report.upper_bound == report.objective);
  CHECK(report.lower_bound <= report.final_lp_value + 1e-9);
}

TEST_CASE("iteration limit returns an uncertified anytime result") {
  GeneratorParams params;
  params.n_superpixels = 150;
  params.n_planted_cells = 4;
  params.noise = 1.0;
  params.seed = 12;
  const auto g = generate_instance(params);
  SolveConfig config;
  config.max_iterations = 1;
  const auto report = solve(g.instance, config);
  CHECK_FALSE(report.certified);
  CHECK_FALSE(report.converged);
  CHECK(report.iterations.size() == 1);
  CHECK(validate_packing(g.instance, report.cells).valid);
  CHECK(report.objective <= 0.0);
  CHECK(report.lower_bound <= report.objective);
}

TEST_CASE("thread count does not change the result") {
  GeneratorParams params;
  params.n_superpixels = 200;
  params.n_planted_cells = 5;
  params.noise = 0.8;
  params.seed = 21;
  const auto g = generate_instance(params);
  SolveConfig config;
  config.thread_count = 1;
  const auto base = solve(g.instance, config);
  for (int threads : {2, 4, 8}) {
    config.thread_count = threads;
    const auto other = solve(g.instance, config);
    CHECK(other.objective == base.objective);
    CHECK(other.lower_bound == base.lower_bound);
    CHECK(other.upper_bound == base.upper_bound);
    CHECK(members_of(other.problem.pool) == members_of(base.problem.pool));
    CHECK(other.problem.cuts == base.problem.cuts);
    CHECK(other.thread_count == threads);
  }
}

}  // TEST_SUITE
