#include "setpack/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "setpack/bounds.hpp"
#include "setpack/pricing.hpp"
#include "setpack/separation.hpp"

namespace setpack {

SolveReport solve(const Instance& instance, const SolveConfig& config,
                  const ProgressCallback& progress) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SolveReport report;
  report.thread_count = config.thread_count > 0 ? config.thread_count : omp_get_max_threads();

  const Pricer pricer(instance);
  MasterLp master(instance);
  double best_lb = -std::numeric_limits<double>::infinity();
  double best_ub = 0.0;  // the empty packing
  std::vector<CellColumn> best_cells;
  LpSolution lp;

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    lp = master.solve();
    const auto& cuts = master.problem().cuts;
    const auto priced = report.thread_count == 1
                            ? pricer.price_all_serial(lp.duals, cuts)
                            : pricer.price_all(lp.duals, cuts, report.thread_count);

    std::vector<double> values(priced.size());
    std::transform(priced.begin(), priced.end(), values.begin(),
                   [](const PricingResult& r) { return r.value; });
    const double lagrangian = lagrangian_lower_bound(lp.duals, values);
    best_lb = std::max(best_lb, lagrangian);

    auto rounded = round_upper_bound(master.problem().pool, lp.primal.gamma);
    if (rounded.value < best_ub) {
      best_ub = rounded.value;
      best_cells = std::move(rounded.cells);
    }

    // Separation works on the LP just solved, i.e. the pool before additions.
    const std::size_t priced_pool = master.problem().pool.size();
    const auto columns = columns_from_pricing(instance, priced, config.eps_rc);
    const std::size_t added = master.add_columns(columns);
    std::size_t cuts_added = 0;
    if (added == 0) {
      const auto pool = std::span(master.problem().pool).first(priced_pool);
      const auto violated = find_violated_triples(
          pool, lp.primal.gamma, cuts, static_cast<std::size_t>(config.max_cuts_per_iter),
          config.cut_tol);
      std::vector<Triple> triples;
      for (const auto& v : violated) triples.push_back(v.triple);
      cuts_added = master.add_cuts(triples);
    }

    IterationRecord record;
    record.iteration = iteration;
    record.lp_value = lp.value;
    record.lagrangian_lb = lagrangian;
    record.best_lb = best_lb;
    record.best_ub = best_ub;
    record.pool_size = master.problem().pool.size();
    record.cut_count = master.problem().cuts.size();
    record.columns_added = added;
    record.cuts_added = cuts_added;
    record.wall_seconds = elapsed();
    report.iterations.push_back(record);
    if (progress) progress(record);

    if (added == 0 && cuts_added == 0) {
      report.converged = true;
      break;
    }
    if (config.time_limit_seconds && elapsed() >= *config.time_limit_seconds) break;
  }

  if (report.converged) {
    // Every cell prices out, so the restricted LP value bounds the optimum.
    best_lb = std::max(best_lb, lp.value);
    std::vector<CellColumn> cells;
    double value = 0.0;
    if (is_integral(lp.primal, 1e-9)) {
      const auto& pool = master.problem().pool;
      for (std::size_t q = 0; q < pool.size(); ++q) {
        if (lp.primal.gamma[q] > 0.5) cells.push_back(pool[q]);
      }
      std::sort(cells.begin(), cells.end(), [](const CellColumn& a, const CellColumn& b) {
        return lexicographically_less(a.members, b.members);
      });
      for (const auto& c : cells) value += c.cost;
    } else {
      auto ilp = solve_restricted_ilp(instance, master.problem());
      cells = std::move(ilp.cells);
      value = ilp.value;
    }
    if (value <= best_ub) {
      best_ub = value;
      best_cells = std::move(cells);
    }
    report.certified =
        best_ub <= lp.value + config.certify_tol * std::max(1.0, std::abs(lp.value));
  }

  report.final_lp_value = lp.value;
  report.cells = std::move(best_cells);
  report.objective = best_ub;
  report.lower_bound = best_lb;
  report.upper_bound = best_ub;
  report.normalized_gap = std::max(0.0, normalized_gap(best_ub, best_lb));
  report.problem = master.problem();
  report.wall_seconds = elapsed();
  return report;
}

}  // namespace setpack
