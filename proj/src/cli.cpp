#include "enaqt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iomanip>
#include <ostream>
#include <thread>

#include "enaqt/output.hpp"
#include "enaqt/presets.hpp"

namespace enaqt {

int run_sweeps(const std::vector<SweepConfig>& sweeps, int jobs, const std::filesystem::path& out_dir,
               std::ostream& log) {
  bool any_failed = false;
  for (const SweepConfig& sc : sweeps) {
    const SweepResult result = run_sweep(sc.spec, jobs);
    for (const auto& path : write_outputs(result, sc.resolved, out_dir)) log << path.string() << "\n";
    for (const SweepPoint& p : result.points) {
      if (!p.failed) continue;
      any_failed = true;
      log << "solver failures: sweep " << sc.spec.name << ", " << to_string(sc.spec.axis1.parameter) << " = "
          << p.axis1;
      if (p.axis2) log << ", " << to_string(sc.spec.axis2->parameter) << " = " << *p.axis2;
      log << ": " << p.failures << " of " << (p.failures + p.realizations) << " realizations failed\n";
    }
  }
  return any_failed ? kExitSolverFailures : kExitOk;
}

void print_presets(std::ostream& os) {
  std::size_t width = 6;
  for (const auto& p : presets()) width = std::max(width, p.name.size());
  os << std::left << std::setw(static_cast<int>(width + 2)) << "preset" << "sweeps  description\n";
  for (const auto& p : presets()) {
    std::string names;
    for (const auto& s : p.config.at("sweeps")) names += (names.empty() ? "" : ",") + s.at("name").get<std::string>();
    os << std::left << std::setw(static_cast<int>(width + 2)) << p.name << std::setw(8)
       << p.config.at("sweeps").size() << p.description << "\n"
       << std::string(width + 10, ' ') << "[" << names << "]\n";
  }
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state ENAQT simulator for open tight-binding chains", "enaqt"};
  app.require_subcommand(1);

  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int jobs = hw;
  std::string out_dir = ".";
  std::string config_path;
  std::string preset_name;
  std::optional<int> realizations;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run the sweeps described by a JSON config");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out,-o", out_dir, "Output directory");

  auto* fig = app.add_subcommand("fig", "Run a figure preset (see `enaqt list`)");
  fig->add_option("preset", preset_name, "Preset name")->required();
  fig->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  fig->add_option("--realizations,-R", realizations, "Override realizations per grid point")
      ->check(CLI::PositiveNumber);
  fig->add_option("--seed,-s", seed, "Override the master seed");
  fig->add_option("--out,-o", out_dir, "Output directory");

  auto* list = app.add_subcommand("list", "List figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (list->parsed()) {
      print_presets(out);
      return kExitOk;
    }
    std::vector<SweepConfig> sweeps;
    if (run->parsed()) {
      sweeps = parse_config(load_json_file(config_path));
    } else {
      const Preset* preset = find_preset(preset_name);
      if (!preset) throw ConfigError("preset", "unknown preset \"" + preset_name + "\" (see `enaqt list`)");
      sweeps = parse_config(preset->config, {realizations, seed});
    }
    return run_sweeps(sweeps, jobs, out_dir, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace enaqt
