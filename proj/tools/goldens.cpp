#include "runner.hpp"

namespace hclab::cli {

namespace {

struct GoldenRun {
  std::string file;
  std::string command;
  json params;
  std::string format;
};

const std::map<std::string, std::vector<GoldenRun>>& suites() {
  static const std::map<std::string, std::vector<GoldenRun>> s = {
      {"nilpotent",
       {{"nilpotent_detan.json", "detan", json::object(), "json"},
        {"nilpotent_jordan.json", "jordan", {{"n", 4}, {"z", {8}}, {"trials", 8}, {"j", 64}}, "json"},
        {"nilpotent_jordan.csv", "jordan", {{"n", 4}, {"z", {8}}, {"trials", 8}}, "csv"}}},
      {"criteria",
       {{"criteria_salas_hc.json", "salas", json::object(), "json"},
        {"criteria_salas_sc.json", "salas", {{"weights", "genshi-sc"}, {"kind", "supercyclic"}}, "json"},
        {"criteria_regions_U.json", "regions", json::object(), "json"},
        {"criteria_perturb.json", "perturb", json::object(), "json"}}},
      {"grading", {{"grading_n0.json", "grading", json::object(), "json"}}},
      {"dynamics",
       {{"dynamics_mixing.json", "mixing", {{"horizon", 32}}, "json"},
        {"dynamics_density.csv", "density", json::object(), "csv"}}},
      {"volterra",
       {{"volterra_trace.csv", "volterra", json::object(), "csv"},
        {"volterra_report.json", "volterra", json::object(), "json"}}},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& golden_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, runs] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

std::map<std::string, std::string> emit_goldens(const std::string& suite) {
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = golden_suites();
  } else if (suites().count(suite)) {
    selected = {suite};
  } else {
    throw InputError("unknown golden suite '" + suite + "'");
  }
  std::map<std::string, std::string> files;
  for (const auto& name : selected) {
    for (const auto& run : suites().at(name)) files[run.file] = render(run.command, run.params, run.format, 1).text;
  }
  return files;
}

}  // namespace hclab::cli
