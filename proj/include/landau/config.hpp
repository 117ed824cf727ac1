#ifndef LANDAU_CONFIG_HPP
#define LANDAU_CONFIG_HPP

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "landau/core.hpp"

namespace landau {

// Strict sectioned key = value text. Every key must be consumed by the run
// that parses it; leftovers are configuration errors named explicitly.
class Config {
 public:
  static Config parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = trim(strip_comment(line));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          throw config_error("config line " + std::to_string(lineno) +
                             ": malformed section header");
        section = trim(s.substr(1, s.size() - 2));
        if (section.empty())
          throw config_error("config line " + std::to_string(lineno) +
                             ": empty section name");
        c.sections_.insert(section);
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw config_error("config line " + std::to_string(lineno) +
                           ": expected key = value");
      std::string key = trim(s.substr(0, eq));
      std::string val = trim(s.substr(eq + 1));
      if (key.empty())
        throw config_error("config line " + std::to_string(lineno) +
                           ": empty key");
      std::string full = section + "." + key;
      if (c.values_.count(full))
        throw config_error("config: duplicate key " + full);
      c.values_[full] = val;
    }
    return c;
  }

  bool has_section(const std::string& s) const { return sections_.count(s); }

  bool has(const std::string& section, const std::string& key) const {
    return values_.count(section + "." + key) > 0;
  }

  std::string get_string(const std::string& section, const std::string& key) {
    std::string full = section + "." + key;
    auto it = values_.find(full);
    if (it == values_.end())
      throw config_error("config: missing key " + full);
    consumed_.insert(full);
    return it->second;
  }

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& def) {
    return has(section, key) ? get_string(section, key) : def;
  }

  double get_double(const std::string& section, const std::string& key) {
    return parse_double(section + "." + key, get_string(section, key));
  }
  double get_double(const std::string& section, const std::string& key,
                    double def) {
    return has(section, key) ? get_double(section, key) : def;
  }

  long get_int(const std::string& section, const std::string& key) {
    std::string full = section + "." + key;
    std::string v = get_string(section, key);
    std::size_t pos = 0;
    long r = 0;
    try {
      r = std::stol(v, &pos);
    } catch (const std::exception&) {
      throw config_error("config: " + full + " is not an integer");
    }
    if (pos != v.size())
      throw config_error("config: " + full + " is not an integer");
    return r;
  }
  long get_int(const std::string& section, const std::string& key, long def) {
    return has(section, key) ? get_int(section, key) : def;
  }

  bool get_bool(const std::string& section, const std::string& key,
                bool def) {
    if (!has(section, key)) return def;
    std::string v = get_string(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: " + section + "." + key + " is not a bool");
  }

  std::vector<double> get_list(const std::string& section,
                               const std::string& key) {
    std::string full = section + "." + key;
    std::string v = get_string(section, key);
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty())
        throw config_error("config: empty element in list " + full);
      out.push_back(parse_double(full, item));
    }
    if (out.empty()) throw config_error("config: empty list " + full);
    return out;
  }
  std::vector<double> get_list(const std::string& section,
                               const std::string& key,
                               const std::vector<double>& def) {
    return has(section, key) ? get_list(section, key) : def;
  }

  // Anything parsed but never requested is an error, not a silent no-op.
  void finish() const {
    for (const auto& [full, val] : values_)
      if (!consumed_.count(full))
        throw config_error("config: unknown key " + full);
  }

  // Full resolved view for manifests.
  const std::map<std::string, std::string>& entries() const {
    return values_;
  }

 private:
  static std::string strip_comment(const std::string& s) {
    auto pos = s.find_first_of("#;");
    return pos == std::string::npos ? s : s.substr(0, pos);
  }
  static std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }
  static double parse_double(const std::string& full, const std::string& v) {
    std::size_t pos = 0;
    double r = 0.0;
    try {
      r = std::stod(v, &pos);
    } catch (const std::exception&) {
      throw config_error("config: " + full + " is not a number");
    }
    if (pos != v.size())
      throw config_error("config: " + full + " is not a number");
    return r;
  }

  std::map<std::string, std::string> values_;
  std::set<std::string> sections_;
  std::set<std::string> consumed_;
};

}  // namespace landau

#endif
