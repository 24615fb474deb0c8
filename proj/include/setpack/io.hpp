#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "setpack/engine.hpp"
#include "setpack/generator.hpp"
#include "setpack/model.hpp"

namespace setpack {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance files:
//   { "dims": 2, "max_radius": r, "max_volume": v, "cell_cost": w,
//     "superpixels": [ {"id": k, "centroid": [x, y], "volume": V, "theta": t}, ... ],
//     "pairwise": [ {"a": i, "b": j, "phi": p}, ... ] }
// with a < b in every pair. An optional "truth" object carries planted cells.
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& instance, const PlantedTruth* truth = nullptr);
std::optional<PlantedTruth> parse_truth(std::string_view text);

struct ReportFile {
  std::vector<MemberSet> cells;
  double objective = 0.0;
  bool certified = false;
};

// "timestamp" is the only run-dependent field; everything else is a function
// of the instance and configuration. Wall-clock timings are only logged.
std::string write_report(const SolveReport& report, const std::string& timestamp = {});
ReportFile parse_report(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace setpack
