#include "holosim/checks.hpp"
#include "holosim/config.hpp"
#include "holosim/errors.hpp"
#include "holosim/output.hpp"
#include "holosim/scenarios.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace holosim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;
constexpr int kExitOracle = 4;

void apply_thread_cap() {
  if (const char* env = std::getenv("HOLOSIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) {
#ifdef _OPENMP
      omp_set_num_threads(n);
#endif
      Eigen::setNbThreads(n);
    }
  }
}

std::set<std::string> parse_formats(const std::string& csv) {
  std::set<std::string> formats;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item != "csv" && item != "pgm" && item != "json-metrics")
      throw ConfigError("unknown output format '" + item +
                        "'; expected csv, pgm, json-metrics");
    formats.insert(item);
  }
  if (formats.empty()) throw ConfigError("no output format selected");
  return formats;
}

ScenarioConfig load_config(const std::string& name_or_file) {
  if (fs::exists(name_or_file) && !fs::is_directory(name_or_file))
    return parse_config_file(name_or_file);
  return find_scenario(name_or_file);
}

void apply_sets(ScenarioConfig& config,
                const std::vector<std::string>& assignments) {
  for (const std::string& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + a + "'");
    apply_override(config, a.substr(0, eq), a.substr(eq + 1));
  }
}

std::string safe_stem(std::string name) {
  for (char& ch : name) {
    if (ch == '/' || ch == '\\' || ch == ' ') ch = '_';
  }
  return name;
}

void emit_outputs(const ScenarioResult& result,
                  const std::set<std::string>& formats, const fs::path& out) {
  fs::create_directories(out);
  const std::string stem = safe_stem(result.config.name);
  if (formats.count("csv"))
    emit_profile_csv(result, out / (stem + ".csv"));
  if (formats.count("json-metrics"))
    emit_metrics_json(result, out / (stem + "_metrics.json"));
  if (formats.count("pgm")) {
    if (result.config.mode == ScenarioMode::TwoPhoton) {
      const CoincidenceMap map = scenario_coincidence_map(result.config);
      emit_map_pgm(map, out / (stem + "_total.pgm"), "total");
      emit_map_pgm(map, out / (stem + "_interference.pgm"), "interference");
    } else {
      std::cerr << "note: '" << result.config.name
                << "' is one-photon; no coincidence map to export\n";
    }
  }
}

void print_summary(const ScenarioResult& r) {
  std::cout << r.config.name << ": visibility=" << r.metrics.visibility
            << " interference_ratio=" << r.metrics.interference_ratio
            << " period=" << r.metrics.imaged_period * 1e6 << "um";
  if (r.metrics.oracle_match)
    std::cout << " oracle_match=" << *r.metrics.oracle_match;
  std::cout << "\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

int run_command(const std::string& target, const std::string& out_dir,
                const std::string& formats_csv,
                const std::vector<std::string>& sets) {
  ScenarioConfig config = load_config(target);
  apply_sets(config, sets);
  const ScenarioResult result = run(config);
  emit_outputs(result, parse_formats(formats_csv), out_dir);
  print_summary(result);
  return kExitOk;
}

int sweep_command(const std::string& name, const std::string& out_dir,
                  const std::string& formats_csv,
                  const std::vector<std::string>& sets) {
  SweepDefinition sweep = find_sweep(name);
  for (auto& point : sweep.points) apply_sets(point.config, sets);
  const std::vector<ScenarioResult> results = run_sweep(sweep);

  const fs::path out = fs::path(out_dir) / safe_stem(sweep.name);
  const std::set<std::string> formats = parse_formats(formats_csv);
  nlohmann::json summary = nlohmann::json::array();
  for (size_t i = 0; i < results.size(); ++i) {
    const ScenarioResult& r = results[i];
    const std::string label = sweep.points[i].label;
    if (formats.count("csv")) {
      fs::create_directories(out);
      ScenarioResult named = r;
      named.config.name = label;
      emit_profile_csv(named, out / (label + ".csv"));
    }
    nlohmann::json row;
    row["label"] = label;
    row["theta"] = r.config.geometry.theta;
    row["z_sr_m"] = r.config.geometry.z_sr;
    row["visibility"] = r.metrics.visibility;
    row["interference_ratio"] = r.metrics.interference_ratio;
    row["imaged_period_m"] = r.metrics.imaged_period;
    summary.push_back(row);
    print_summary(r);
  }
  fs::create_directories(out);
  std::ofstream meta(out / "summary.json", std::ios::binary);
  meta << summary.dump(2) << "\n";
  return kExitOk;
}

int oracle_command(const std::vector<std::string>& sets) {
  SamplingGrid grid = default_grid();
  for (const std::string& a : sets) {
    const auto eq = a.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + a + "'");
    const std::string key = a.substr(0, eq);
    const std::string value = a.substr(eq + 1);
    ScenarioConfig shim;
    shim.grid = grid;
    if (key.rfind("grid.", 0) != 0)
      throw ConfigError("oracle-check only accepts grid.* overrides");
    apply_override(shim, key, value);
    grid = shim.grid;
  }
  const OracleReport report = oracle_check(grid);
  std::cout << format_report(report);
  return report.all_passed() ? kExitOk : kExitOracle;
}

} // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"holosim - 1-D paraxial holography and two-photon "
               "coincidence simulator"};
  app.require_subcommand(1);

  std::string out_dir = "./out";
  std::string formats = "csv,json-metrics";
  std::vector<std::string> sets;

  auto* list = app.add_subcommand("list-scenarios",
                                  "List built-in scenarios and sweeps");

  std::string run_target;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario by name or "
                                            "from a config file");
  run_cmd->add_option("scenario", run_target, "Scenario name or config path")
      ->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--format", formats, "csv,pgm,json-metrics");
  run_cmd->add_option("--set", sets, "Override key=value (repeatable)");

  std::string sweep_target;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a built-in sweep");
  sweep_cmd->add_option("sweep", sweep_target, "Sweep name")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_option("--format", formats, "csv,pgm,json-metrics");
  sweep_cmd->add_option("--set", sets, "Override key=value (repeatable)");

  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "Run the holography verification suite");
  oracle_cmd->add_option("--set", sets,
                         "Grid override key=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      std::cout << "scenarios:\n";
      for (const auto& c : builtin_scenarios()) {
        std::cout << "  " << c.name << "  ("
                  << (c.mode == ScenarioMode::OnePhoton ? "one-photon"
                                                        : "two-photon")
                  << ", " << c.mask.describe() << ")\n";
      }
      std::cout << "sweeps:\n";
      for (const auto& s : builtin_sweeps()) {
        std::cout << "  " << s.name << "  (" << s.points.size()
                  << " points)\n";
      }
      return kExitOk;
    }
    if (run_cmd->parsed()) return run_command(run_target, out_dir, formats, sets);
    if (sweep_cmd->parsed())
      return sweep_command(sweep_target, out_dir, formats, sets);
    if (oracle_cmd->parsed()) return oracle_command(sets);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitGuard;
  }
  return kExitOk;
}
