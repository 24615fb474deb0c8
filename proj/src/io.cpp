#include "setpack/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace setpack {

using nlohmann::ordered_json;

namespace {

ordered_json parse_json(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const ordered_json& field(const ordered_json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw ParseError(where + ": missing field \"" + name + "\"");
  }
  return obj.at(name);
}

double number(const ordered_json& obj, const char* name, const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_number()) throw ParseError(where + "." + name + ": expected a number");
  return v.get<double>();
}

std::int64_t integer(const ordered_json& obj, const char* name, const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + name + ": expected an integer");
  return v.get<std::int64_t>();
}

std::vector<MemberSet> parse_cell_list(const ordered_json& list, const std::string& where) {
  if (!list.is_array()) throw ParseError(where + ": expected an array");
  std::vector<MemberSet> cells;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& cell = list[i];
    if (!cell.is_array()) throw ParseError(where + "[" + std::to_string(i) + "]: expected array");
    std::vector<SuperpixelId> members;
    for (const auto& id : cell) {
      if (!id.is_number_integer()) {
        throw ParseError(where + "[" + std::to_string(i) + "]: ids must be integers");
      }
      members.push_back(id.get<SuperpixelId>());
    }
    cells.push_back(normalize_members(std::move(members)));
  }
  return cells;
}

ordered_json cells_json(const std::vector<MemberSet>& cells) {
  auto out = ordered_json::array();
  for (const auto& c : cells) out.push_back(c);
  return out;
}

// JSON has no infinity; unbounded gaps are written as null.
ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto root = parse_json(text);
  if (!root.is_object()) throw ParseError("instance: expected a JSON object");

  InstanceData data;
  data.dims = static_cast<int>(integer(root, "dims", "instance"));
  if (data.dims != 2 && data.dims != 3) throw ParseError("instance.dims: must be 2 or 3");
  data.max_radius = number(root, "max_radius", "instance");
  data.max_volume = number(root, "max_volume", "instance");
  data.omega = number(root, "cell_cost", "instance");

  const auto& sps = field(root, "superpixels", "instance");
  if (!sps.is_array()) throw ParseError("instance.superpixels: expected an array");
  for (std::size_t i = 0; i < sps.size(); ++i) {
    const std::string where = "superpixels[" + std::to_string(i) + "]";
    Superpixel sp;
    sp.id = static_cast<SuperpixelId>(integer(sps[i], "id", where));
    const auto& centroid = field(sps[i], "centroid", where);
    if (!centroid.is_array() || static_cast<int>(centroid.size()) != data.dims) {
      throw ParseError(where + ".centroid: expected " + std::to_string(data.dims) + " coordinates");
    }
    for (int k = 0; k < data.dims; ++k) {
      if (!centroid[k].is_number()) throw ParseError(where + ".centroid: expected numbers");
      sp.centroid[k] = centroid[k].get<double>();
    }
    sp.volume = number(sps[i], "volume", where);
    if (!(sp.volume > 0.0)) throw ParseError(where + ".volume: must be positive");
    sp.theta = number(sps[i], "theta", where);
    data.superpixels.push_back(sp);
  }

  if (root.contains("pairwise")) {
    const auto& pairs = root.at("pairwise");
    if (!pairs.is_array()) throw ParseError("instance.pairwise: expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string where = "pairwise[" + std::to_string(i) + "]";
      PairCost p;
      p.a = static_cast<SuperpixelId>(integer(pairs[i], "a", where));
      p.b = static_cast<SuperpixelId>(integer(pairs[i], "b", where));
      p.phi = number(pairs[i], "phi", where);
      if (!(p.a < p.b)) throw ParseError(where + ": requires a < b");
      data.pairwise.push_back(p);
    }
  }

  try {
    return Instance(std::move(data));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

std::string write_instance(const Instance& instance, const PlantedTruth* truth) {
  ordered_json root;
  root["dims"] = instance.dims();
  root["max_radius"] = instance.max_radius();
  root["max_volume"] = instance.max_volume();
  root["cell_cost"] = instance.omega();
  auto sps = ordered_json::array();
  for (const auto& sp : instance.superpixels()) {
    ordered_json entry;
    entry["id"] = sp.id;
    auto centroid = ordered_json::array();
    for (int k = 0; k < instance.dims(); ++k) centroid.push_back(sp.centroid[k]);
    entry["centroid"] = std::move(centroid);
    entry["volume"] = sp.volume;
    entry["theta"] = sp.theta;
    sps.push_back(std::move(entry));
  }
  root["superpixels"] = std::move(sps);
  auto pairs = ordered_json::array();
  for (const auto& p : instance.pairwise()) {
    pairs.push_back(ordered_json{{"a", p.a}, {"b", p.b}, {"phi", p.phi}});
  }
  root["pairwise"] = std::move(pairs);
  if (truth) {
    root["truth"] = ordered_json{{"cells", cells_json(truth->cells)},
                                 {"background", truth->background}};
  }
  return root.dump(1) + "\n";
}

std::optional<PlantedTruth> parse_truth(std::string_view text) {
  const auto root = parse_json(text);
  if (!root.is_object() || !root.contains("truth")) return std::nullopt;
  const auto& truth = root.at("truth");
  PlantedTruth out;
  out.cells = parse_cell_list(field(truth, "cells", "truth"), "truth.cells");
  if (truth.contains("background")) {
    const auto bg = parse_cell_list(ordered_json::array({truth.at("background")}),
                                    "truth.background");
    out.background = bg.front();
  }
  return out;
}

std::string write_report(const SolveReport& report, const std::string& timestamp) {
  ordered_json root;
  std::vector<MemberSet> cells;
  for (const auto& c : report.cells) cells.push_back(c.members);
  root["cells"] = cells_json(cells);
  root["objective"] = report.objective;
  root["certified"] = report.certified;
  root["converged"] = report.converged;
  root["lower_bound"] = finite_or_null(report.lower_bound);
  root["upper_bound"] = report.upper_bound;
  root["normalized_gap"] = finite_or_null(report.normalized_gap);
  root["final_lp_value"] = report.final_lp_value;
  root["pool_size"] = report.problem.pool.size();
  root["cut_count"] = report.problem.cuts.size();
  root["thread_count"] = report.thread_count;
  auto iterations = ordered_json::array();
  for (const auto& it : report.iterations) {
    iterations.push_back(ordered_json{{"iteration", it.iteration},
                                      {"lp_value", finite_or_null(it.lp_value)},
                                      {"lagrangian_lb", finite_or_null(it.lagrangian_lb)},
                                      {"best_lb", finite_or_null(it.best_lb)},
                                      {"best_ub", finite_or_null(it.best_ub)},
                                      {"pool_size", it.pool_size},
                                      {"cut_count", it.cut_count},
                                      {"columns_added", it.columns_added},
                                      {"cuts_added", it.cuts_added}});
  }
  root["iterations"] = std::move(iterations);
  root["timestamp"] = timestamp;
  return root.dump(1) + "\n";
}

ReportFile parse_report(std::string_view text) {
  const auto root = parse_json(text);
  ReportFile out;
  out.cells = parse_cell_list(field(root, "cells", "report"), "report.cells");
  out.objective = number(root, "objective", "report");
  const auto& certified = field(root, "certified", "report");
  if (!certified.is_boolean()) throw ParseError("report.certified: expected a boolean");
  out.certified = certified.get<bool>();
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("failed writing " + path.string());
}

}  // namespace setpack
