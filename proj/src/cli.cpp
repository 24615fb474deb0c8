#include "setpack/cli.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "setpack/engine.hpp"
#include "setpack/generator.hpp"
#include "setpack/io.hpp"
#include "setpack/metrics.hpp"
#include "setpack/oracle.hpp"
#include "setpack/simplex.hpp"

namespace setpack::cli {

namespace {

enum class LogLevel { kQuiet, kInfo, kTrace };

LogLevel log_level() {
  const char* env = std::getenv("SETPACK_LOG");
  if (!env) return LogLevel::kInfo;
  const std::string v = env;
  if (v == "quiet") return LogLevel::kQuiet;
  if (v == "trace") return LogLevel::kTrace;
  return LogLevel::kInfo;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct SolveArgs {
  std::string instance;
  std::string out;
  int max_iters = 1000;
  double time_limit = 0.0;
  int threads = 0;
  int cuts_per_iter = 1;
  std::uint64_t seed = 0;
};

struct GenerateArgs {
  int superpixels = 100;
  int cells = 4;
  std::uint64_t seed = 1;
  double radius = 1.5;
  double noise = 0.0;
  double omega = 0.5;
  std::string out;
};

int do_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  Instance instance = parse_instance(read_text_file(args.instance));
  SolveConfig config;
  config.max_iterations = args.max_iters;
  config.max_cuts_per_iter = args.cuts_per_iter;
  config.thread_count = args.threads > 0
                            ? args.threads
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (args.time_limit > 0.0) config.time_limit_seconds = args.time_limit;

  const LogLevel level = log_level();
  auto progress = [&](const IterationRecord& r) {
    if (level == LogLevel::kQuiet) return;
    out << fmt::format("iter={} lp={:.9g} lb={:.9g} ub={:.9g} gap={:.6g} cols={} cuts={}\n",
                       r.iteration, r.lp_value, r.best_lb, r.best_ub,
                       std::max(0.0, (r.best_ub - r.best_lb) / std::max(1e-300, std::abs(r.best_lb))),
                       r.pool_size, r.cut_count);
    if (level == LogLevel::kTrace) {
      err << fmt::format("  lagrangian={:.9g} new_cols={} new_cuts={} t={:.3f}s\n",
                         r.lagrangian_lb, r.columns_added, r.cuts_added, r.wall_seconds);
    }
  };
  const SolveReport report = solve(instance, config, progress);
  write_text_file(args.out, write_report(report, utc_timestamp()));
  if (level != LogLevel::kQuiet) {
    out << fmt::format("objective={:.9g} certified={} cells={} gap={:.6g}\n", report.objective,
                       report.certified ? "true" : "false", report.cells.size(),
                       report.normalized_gap);
  }
  return report.certified ? kOk : kUncertified;
}

int do_generate(const GenerateArgs& args, std::ostream& out) {
  GeneratorParams params;
  params.n_superpixels = args.superpixels;
  params.n_planted_cells = args.cells;
  params.seed = args.seed;
  params.cell_radius = args.radius;
  params.noise = args.noise;
  params.omega = args.omega;
  const auto generated = generate_instance(params);
  write_text_file(args.out, write_instance(generated.instance, &generated.truth));
  out << fmt::format("wrote {} superpixels, {} planted cells to {}\n",
                     generated.instance.size(), generated.truth.cells.size(), args.out);
  return kOk;
}

int do_oracle(const std::string& path, std::ostream& out) {
  const Instance instance = parse_instance(read_text_file(path));
  const auto solution = oracle_solve(instance);
  out << fmt::format("optimal={:.17g} cells={} feasible_cells={}\n", solution.value,
                     solution.cells.size(), solution.feasible_cells);
  for (const auto& cell : solution.cells) out << fmt::format("cell {}\n", fmt::join(cell.members, " "));
  return kOk;
}

int do_evaluate(const std::string& pred_path, const std::string& truth_path, std::ostream& out) {
  const std::string truth_text = read_text_file(truth_path);
  const Instance instance = parse_instance(truth_text);
  const auto truth = parse_truth(truth_text);
  if (!truth) throw ParseError(truth_path + ": no \"truth\" object");
  const auto report = parse_report(read_text_file(pred_path));
  for (const auto& cell : report.cells) {
    for (SuperpixelId d : cell) {
      if (!instance.contains(d)) throw ParseError("prediction references unknown id " + std::to_string(d));
    }
  }
  const auto det = detection_metrics(report.cells, truth->cells, instance);
  const auto seg = segmentation_metrics(det.matches, report.cells, truth->cells, instance);
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.6f}", *v) : std::string("n/a");
  };
  out << fmt::format("precision={:.6f} recall={:.6f} f={:.6f} dice={} jaccard={}\n", det.precision,
                     det.recall, det.f_score, opt(seg.dice), opt(seg.jaccard));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Column-generation set packing solver for superpixel cell segmentation",
               "setpack"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and write a report");
  solve_cmd->add_option("--instance", solve_args.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--out", solve_args.out, "Report JSON file")->required();
  solve_cmd->add_option("--max-iters", solve_args.max_iters)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--threads", solve_args.threads)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--cuts-per-iter", solve_args.cuts_per_iter)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve_args.seed, "Accepted for reproducible scripts; the solver is deterministic");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic instance with planted cells");
  gen_cmd->add_option("--superpixels", gen_args.superpixels)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cells", gen_args.cells)->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen_args.seed)->required();
  gen_cmd->add_option("--out", gen_args.out)->required();
  gen_cmd->add_option("--radius", gen_args.radius, "Cell radius in grid spacings")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--noise", gen_args.noise)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--omega", gen_args.omega);

  std::string oracle_instance;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive reference solve of a small instance");
  oracle_cmd->add_option("--instance", oracle_instance)->required();

  std::string pred_path, truth_path;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a report against planted truth");
  eval_cmd->add_option("--pred", pred_path, "Report JSON file")->required();
  eval_cmd->add_option("--truth", truth_path, "Instance JSON file with a truth object")->required();

  std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*solve_cmd) return do_solve(solve_args, out, err);
    if (*gen_cmd) return do_generate(gen_args, out);
    if (*oracle_cmd) return do_oracle(oracle_instance, out);
    if (*eval_cmd) return do_evaluate(pred_path, truth_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const OracleTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kOracleTooLarge;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
  return kBadInput;
}

}  // namespace setpack::cli
