// Minimal INI-style configuration reader: [section] headers, key = value
// pairs, '#' comments. Parse errors carry the file name and line number.
#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

struct Config {
  // section -> key -> value, with insertion order kept per section
  std::map<std::string, std::map<std::string, std::string>> data;
  std::string source;

  bool has(const std::string& section, const std::string& key) const {
    auto s = data.find(section);
    return s != data.end() && s->second.count(key) > 0;
  }

  std::string get(const std::string& section, const std::string& key) const {
    auto s = data.find(section);
    if (s == data.end()) throw data_error(source + ": missing section [" + section + "]");
    auto k = s->second.find(key);
    if (k == s->second.end())
      throw data_error(source + ": missing key '" + key + "' in [" + section + "]");
    return k->second;
  }

  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
  }

  double get_double(const std::string& section, const std::string& key) const {
    const std::string raw = get(section, key);
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0')
      throw data_error(source + ": key '" + key + "' in [" + section + "] is not a number: '" +
                       raw + "'");
    return v;
  }

  double get_double_or(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
  }

  int get_int(const std::string& section, const std::string& key) const {
    const double v = get_double(section, key);
    const int n = static_cast<int>(v);
    if (static_cast<double>(n) != v)
      throw data_error(source + ": key '" + key + "' in [" + section + "] is not an integer");
    return n;
  }

  int get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
  }
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace config_detail

inline Config parse_config(std::istream& in, const std::string& source_name) {
  using config_detail::trim;
  Config cfg;
  cfg.source = source_name;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw data_error(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw data_error(where + ": empty section name");
      cfg.data[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw data_error(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw data_error(where + ": empty key");
    if (section.empty()) throw data_error(where + ": key outside any [section]");
    cfg.data[section][key] = value;
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open config file: " + path);
  return parse_config(in, path);
}

}  // namespace capgraph
