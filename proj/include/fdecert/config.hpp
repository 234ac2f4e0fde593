#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdecert {

/// Parse or lookup failure; the message carries the file/line or the full
/// key path so the caller can report it verbatim.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * Sectioned key/value configuration:
 *
 *   [section]
 *   key = value        # comment
 *   rows = [[1, 0],
 *           [0, 1]]    # values continue until brackets balance
 *
 * Values are kept as text and parsed by the typed getters. Every getter
 * marks its key consumed; require_all_consumed() then rejects misspelled or
 * misplaced keys instead of silently ignoring them.
 */
class Config {
public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  std::vector<std::string> sections() const;
  std::vector<std::string> keys(const std::string& section) const;

  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  std::int64_t get_int_or(const std::string& section, const std::string& key,
                          std::int64_t fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  std::vector<double> get_array(const std::string& section, const std::string& key) const;
  std::vector<std::vector<double>> get_matrix(const std::string& section,
                                              const std::string& key) const;

  /// Throws ConfigError naming every key no getter has touched.
  void require_all_consumed() const;

  /// Canonical one-line-per-key rendering (sorted), used for content hashing.
  std::string canonical_text() const;

private:
  const std::string& raw(const std::string& section, const std::string& key) const;

  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> data_;
  mutable std::set<std::string> consumed_;
};

}  // namespace fdecert
