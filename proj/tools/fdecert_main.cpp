// Command-line front end: run, list, and describe simulation scenarios.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fdecert/config.hpp"
#include "fdecert/scenario.hpp"

namespace fs = std::filesystem;

namespace {

fdecert::Config load_config(const std::string& target) {
  if (fdecert::is_preset(target)) return fdecert::preset_config(target);
  if (!fs::exists(target)) {
    throw fdecert::ConfigError("no such preset or config file: " + target);
  }
  return fdecert::Config::parse_file(target);
}

std::string scenario_name(const std::string& target) {
  if (fdecert::is_preset(target)) return target;
  return fs::path(target).stem().string();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_run(const std::string& target, const std::optional<std::string>& out_dir,
            std::optional<std::uint64_t> seed, bool quiet) {
  const auto cfg = load_config(target);
  const auto name = scenario_name(target);
  const auto result = fdecert::run_scenario(cfg, name, seed);

  if (!quiet) std::cout << result.report_text;
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_file(fs::path(*out_dir) / (name + "_report.txt"), result.report_text);
    write_file(fs::path(*out_dir) / (name + "_results.json"), result.results_json);
    for (const auto& [fname, content] : result.tables) {
      write_file(fs::path(*out_dir) / fname, content);
    }
  }
  return result.exit_code;
}

int cmd_list() {
  for (const auto& name : fdecert::preset_names()) {
    std::cout << name << "\n    " << fdecert::preset_description(name) << "\n";
  }
  return 0;
}

int cmd_describe(const std::string& target) {
  const auto cfg = load_config(target);
  std::cout << fdecert::describe_scenario(cfg, scenario_name(target));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-backed stability and dissipativity checks for delay systems"};
  app.require_subcommand(1);

  std::string run_target;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a scenario from a preset name or config file");
  run->add_option("target", run_target, "Preset name or path to a config file")->required();
  run->add_option("--out", out_dir, "Directory for the report, results JSON, and tables");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_flag("--quiet", quiet, "Suppress the report on stdout");

  auto* list = app.add_subcommand("list", "List the built-in scenario presets");

  std::string describe_target;
  auto* describe = app.add_subcommand("describe", "Show a scenario's effective settings");
  describe->add_option("target", describe_target, "Preset name or path to a config file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_target, out_dir, seed, quiet);
    if (list->parsed()) return cmd_list();
    if (describe->parsed()) return cmd_describe(describe_target);
  } catch (const fdecert::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
