#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#include "fdecert/scenario.hpp"

using namespace fdecert;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FDECERT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

void scrub(const std::string& path) {
  const int rc = std::system(("rm -rf " + path).c_str());
  (void)rc;
}

}  // namespace

TEST_CASE("preset catalogue") {
  CHECK(preset_names().size() == 5);
  CHECK(is_preset("ode_decay"));
  CHECK(is_preset("delayed_stable"));
  CHECK_FALSE(is_preset("nope"));
  CHECK_THROWS_AS((void)preset_config("nope"), ConfigError);
  CHECK(!preset_description("unstable").empty());
  for (const auto& name : preset_names()) {
    CHECK_NOTHROW((void)preset_config(name));
  }
}

TEST_CASE("configuration hash is the canonical-text fingerprint") {
  const auto cfg = Config::parse_string("[a]\nb = c\n");
  CHECK(scenario_hash(cfg) == 0x7aa76aafc5fee77eULL);
  // Key order in the source must not matter.
  const auto swapped = Config::parse_string("[z]\nk = 1\n[a]\nb = c\n");
  const auto straight = Config::parse_string("[a]\nb = c\n[z]\nk = 1\n");
  CHECK(scenario_hash(swapped) == scenario_hash(straight));
}

TEST_CASE("clean scenario run produces a passing machine report") {
  const auto res = run_scenario(preset_config("ode_decay"), "ode_decay");
  CHECK(res.exit_code == 0);
  CHECK(!res.report_text.empty());

  const auto j = json::parse(res.results_json);
  CHECK(j.at("scenario") == "ode_decay");
  CHECK(j.at("seed") == 101);
  const std::string hash = j.at("hash");
  CHECK(hash.substr(0, 2) == "0x");
  CHECK(hash.size() == 18);
  CHECK(j.at("checks").at("certificate").at("status") == "pass");
  CHECK(j.at("checks").at("certificate").at("verdict") == "certified-GUAS-evidence");
  CHECK(j.at("exit_code") == 0);
}

TEST_CASE("violations exit 1 and reruns are byte-identical") {
  const auto a = run_scenario(preset_config("unstable"), "unstable");
  const auto b = run_scenario(preset_config("unstable"), "unstable");
  CHECK(a.exit_code == 1);
  CHECK(a.results_json == b.results_json);
  CHECK(a.report_text == b.report_text);
  REQUIRE(a.tables.size() == b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    CHECK(a.tables[i].first == b.tables[i].first);
    CHECK(a.tables[i].second == b.tables[i].second);
  }

  const auto j = json::parse(a.results_json);
  CHECK(j.at("checks").at("certificate").at("verdict") == "refuted");
  CHECK(j.at("checks").at("classify").at("verdict") == "unstable");
}

TEST_CASE("seed override lands in the machine report") {
  const auto res = run_scenario(preset_config("ode_decay"), "ode_decay", 777);
  const auto j = json::parse(res.results_json);
  CHECK(j.at("seed") == 777);
  CHECK(res.exit_code == 0);
}

TEST_CASE("assembly problems surface as configuration errors") {
  // Unknown key.
  CHECK_THROWS_AS(run_scenario(Config::parse_string("[system]\nkind = linear-delay\n"
                                                    "a1 = [[-1]]\ntypo = 3\n"
                                                    "[functional]\np = [[1]]\n"),
                               "x"),
                  ConfigError);
  // Functional dimension disagrees with the state dimension.
  CHECK_THROWS_AS(run_scenario(Config::parse_string("[system]\nkind = linear-delay\n"
                                                    "a1 = [[-1]]\n"
                                                    "[functional]\np = [[1, 0], [0, 1]]\n"),
                               "x"),
                  ConfigError);
  // No system section at all.
  CHECK_THROWS_AS(run_scenario(Config::parse_string("[functional]\np = [[1]]\n"), "x"),
                  ConfigError);
}

TEST_CASE("describe lists the effective settings") {
  const auto text = describe_scenario(preset_config("ode_decay"), "ode_decay");
  CHECK(text.find("ode_decay") != std::string::npos);
  CHECK(text.find("effective settings:") != std::string::npos);
  CHECK(text.find("[system]") != std::string::npos);
  CHECK(text.find("[numerics]") != std::string::npos);
  CHECK(text.find("hash 0x") != std::string::npos);
  CHECK(text.find("checks: certificate=on") != std::string::npos);
}

TEST_CASE("describe output round-trips through the parser and runner") {
  for (const auto& name : preset_names()) {
    const auto text = describe_scenario(preset_config(name), name);

    // The settings block is everything between the header and the checks footer.
    const auto head = text.find("effective settings:\n");
    REQUIRE(head != std::string::npos);
    const auto tail = text.rfind("checks: ");
    REQUIRE(tail != std::string::npos);
    std::string block;
    std::istringstream lines(text.substr(head + 20, tail - head - 20));
    for (std::string line; std::getline(lines, line);) {
      block += line.substr(line.find_first_not_of(' '));
      block += '\n';
    }

    const auto cfg = Config::parse_string(block, name + "-roundtrip");
    const auto copied = run_scenario(cfg, name);
    const auto original = run_scenario(preset_config(name), name);
    CHECK(copied.exit_code == original.exit_code);

    // Hashes differ (the copy spells out every default), the results must not.
    auto a = json::parse(copied.results_json);
    auto b = json::parse(original.results_json);
    a.erase("hash");
    b.erase("hash");
    CHECK(a == b);
  }
}

TEST_CASE("command line: exit codes") {
  CHECK(run_cli("run unstable --quiet") == 1);
  CHECK(run_cli("run no_such_scenario") == 2);
  CHECK(run_cli("list") == 0);
  CHECK(run_cli("describe ode_decay") == 0);

  const std::string bad_cfg = "/tmp/fdecert_bad_config.cfg";
  {
    std::ofstream out(bad_cfg);
    out << "[system]\nkind = linear-delay\n";  // a1 missing
  }
  CHECK(run_cli("run " + bad_cfg) == 2);
  std::remove(bad_cfg.c_str());
}

TEST_CASE("command line: output directory") {
  const std::string dir = "/tmp/fdecert_cli_out";
  scrub(dir);
  REQUIRE(run_cli("run ode_decay --quiet --out " + dir) == 0);
  CHECK(file_exists(dir + "/ode_decay_report.txt"));
  const auto j = json::parse(slurp(dir + "/ode_decay_results.json"));
  CHECK(j.at("scenario") == "ode_decay");
  CHECK(j.at("exit_code") == 0);

  // A config failure must not leave result files behind.
  const std::string dir2 = "/tmp/fdecert_cli_out2";
  scrub(dir2);
  const std::string bad_cfg = "/tmp/fdecert_bad_config2.cfg";
  {
    std::ofstream out(bad_cfg);
    out << "[system]\nkind = mystery\n";
  }
  CHECK(run_cli("run " + bad_cfg + " --out " + dir2) == 2);
  CHECK_FALSE(file_exists(dir2 + "/fdecert_bad_config2_report.txt"));
  CHECK_FALSE(file_exists(dir2 + "/fdecert_bad_config2_results.json"));
  std::remove(bad_cfg.c_str());
  scrub(dir);
  scrub(dir2);
}
