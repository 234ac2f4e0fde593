#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdecert/config.hpp"

namespace fdecert {

/**
 * Outcome of one scenario run. exit_code follows the command-line contract:
 * 0 when every enabled check passes, 1 when any check reports a violation or
 * stays inconclusive, 2 (via ConfigError, thrown before any result exists)
 * for configuration problems. report_text is the human summary;
 * results_json is the machine report, deterministic byte for byte for a
 * fixed configuration and seed (no timestamps, no addresses).
 */
struct RunResult {
  int exit_code = 0;
  std::string report_text;
  std::string results_json;
  // Optional data exports: (file name, delimited-text content).
  std::vector<std::pair<std::string, std::string>> tables;
};

/// Assembles the system, functional, and checks from cfg and runs them.
/// Unknown keys, dimension mismatches, and invalid component definitions all
/// surface as ConfigError before any simulation output is produced.
RunResult run_scenario(const Config& cfg, const std::string& name,
                       std::optional<std::uint64_t> seed_override = {});

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
/// One-line summary, or the parsed configuration; both throw ConfigError on
/// an unknown name.
std::string preset_description(const std::string& name);
Config preset_config(const std::string& name);

/// Effective-settings listing: every key the runner understands with the
/// value it would actually use, defaults included.
std::string describe_scenario(const Config& cfg, const std::string& name);

/// FNV-1a (64-bit) over the canonical key=value rendering; identifies the
/// configuration content in reports.
std::uint64_t scenario_hash(const Config& cfg);

}  // namespace fdecert
