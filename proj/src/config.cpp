#include "fdecert/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fdecert {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

int bracket_balance(const std::string& s) {
  int bal = 0;
  for (char c : s) {
    if (c == '[') ++bal;
    if (c == ']') --bal;
  }
  return bal;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line_no, const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& text, const std::string& path) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(path + ": empty value where a number was expected");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError(path + ": not a number: '" + t + "'");
  }
  return v;
}

// Splits "a, b, c" at top-level commas (commas inside nested brackets stay).
std::vector<std::string> split_top_level(const std::string& body) {
  std::vector<std::string> parts;
  int bal = 0;
  std::string cur;
  for (char c : body) {
    if (c == '[') ++bal;
    if (c == ']') --bal;
    if (c == ',' && bal == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

std::string unwrap_brackets(const std::string& text, const std::string& path) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw ConfigError(path + ": expected a bracketed list, got '" + t + "'");
  }
  return t.substr(1, t.size() - 2);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;

  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;

    if (body.front() == '[' && body.back() == ']' && bracket_balance(body) == 0 &&
        body.find('=') == std::string::npos && body.find(',') == std::string::npos &&
        body.find('[', 1) == std::string::npos) {
      section = trim(body.substr(1, body.size() - 2));
      if (section.empty()) fail(origin, line_no, "empty section name");
      cfg.data_[section];  // a section may be present yet hold no keys
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected 'key = value': '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) fail(origin, line_no, "empty key");
    if (section.empty()) fail(origin, line_no, "key '" + key + "' appears before any [section]");

    std::string value = body.substr(eq + 1);
    const std::size_t start_line = line_no;
    while (bracket_balance(value) > 0) {
      if (!std::getline(in, line)) fail(origin, start_line, "unbalanced brackets in value of '" + key + "'");
      ++line_no;
      value += ' ';
      value += strip_comment(line);
    }
    if (bracket_balance(value) < 0) fail(origin, start_line, "unbalanced brackets in value of '" + key + "'");
    value = trim(value);
    if (value.empty()) fail(origin, start_line, "empty value for key '" + key + "'");

    auto& sec = cfg.data_[section];
    if (sec.count(key)) fail(origin, start_line, "duplicate key '" + section + "." + key + "'");
    sec[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = data_.find(section);
  return it != data_.end() && it->second.count(key) > 0;
}

bool Config::has_section(const std::string& section) const { return data_.count(section) > 0; }

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  out.reserve(data_.size());
  for (const auto& [name, kv] : data_) out.push_back(name);
  return out;
}

std::vector<std::string> Config::keys(const std::string& section) const {
  std::vector<std::string> out;
  const auto it = data_.find(section);
  if (it == data_.end()) return out;
  out.reserve(it->second.size());
  for (const auto& [k, v] : it->second) out.push_back(k);
  return out;
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
  const auto it = data_.find(section);
  if (it == data_.end() || !it->second.count(key)) {
    throw ConfigError(origin_ + ": missing required key '" + section + "." + key + "'");
  }
  consumed_.insert(section + "." + key);
  return it->second.at(key);
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_double(raw(section, key), origin_ + ": " + section + "." + key);
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key) const {
  const std::string path = origin_ + ": " + section + "." + key;
  const double v = parse_double(raw(section, key), path);
  const auto i = static_cast<std::int64_t>(v);
  if (static_cast<double>(i) != v) throw ConfigError(path + ": expected an integer");
  return i;
}

std::int64_t Config::get_int_or(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = trim(raw(section, key));
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(origin_ + ": " + section + "." + key + ": expected true or false, got '" + v +
                    "'");
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  return trim(raw(section, key));
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

std::vector<double> Config::get_array(const std::string& section, const std::string& key) const {
  const std::string path = origin_ + ": " + section + "." + key;
  const std::string body = unwrap_brackets(raw(section, key), path);
  std::vector<double> out;
  for (const auto& part : split_top_level(body)) out.push_back(parse_double(part, path));
  return out;
}

std::vector<std::vector<double>> Config::get_matrix(const std::string& section,
                                                    const std::string& key) const {
  const std::string path = origin_ + ": " + section + "." + key;
  const std::string body = unwrap_brackets(raw(section, key), path);
  std::vector<std::vector<double>> out;
  for (const auto& row_text : split_top_level(body)) {
    const std::string row_body = unwrap_brackets(row_text, path);
    std::vector<double> row;
    for (const auto& part : split_top_level(row_body)) row.push_back(parse_double(part, path));
    out.push_back(std::move(row));
  }
  return out;
}

void Config::require_all_consumed() const {
  std::vector<std::string> untouched;
  for (const auto& [section, kv] : data_) {
    for (const auto& [key, value] : kv) {
      if (!consumed_.count(section + "." + key)) untouched.push_back(section + "." + key);
    }
  }
  if (!untouched.empty()) {
    std::string msg = origin_ + ": unknown key";
    msg += untouched.size() > 1 ? "s: " : ": ";
    for (std::size_t i = 0; i < untouched.size(); ++i) {
      if (i) msg += ", ";
      msg += untouched[i];
    }
    throw ConfigError(msg);
  }
}

std::string Config::canonical_text() const {
  std::string out;
  for (const auto& [section, kv] : data_) {
    for (const auto& [key, value] : kv) {
      out += section;
      out += '.';
      out += key;
      out += '=';
      out += value;
      out += '\n';
    }
  }
  return out;
}

}  // namespace fdecert
