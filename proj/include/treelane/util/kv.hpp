#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "treelane/errors.hpp"
#include "treelane/util/strings.hpp"

namespace treelane::util {

// Flat `key = value` config text. '#' starts a comment, blank lines are
// ignored, later assignments win.
class KvFile {
 public:
  static KvFile parse(std::string_view text) {
    KvFile kv;
    int lineno = 0;
    for (const std::string& raw : split_lines(text)) {
      ++lineno;
      std::string_view line = raw;
      if (size_t hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(lineno),
                          "expected 'key = value', got: " + std::string(line));
      }
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) {
        throw ConfigError("line " + std::to_string(lineno), "empty key");
      }
      kv.values_[key] = value;
    }
    return kv;
  }

  static KvFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string get_or(const std::string& key, std::string_view fallback) const {
    auto v = get(key);
    return v ? *v : std::string(fallback);
  }

  int get_int(const std::string& key, int fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
      size_t idx = 0;
      int out = std::stoi(*v, &idx);
      if (idx != v->size()) throw std::invalid_argument("trailing chars");
      return out;
    } catch (const std::exception&) {
      throw ConfigError(key, "not an integer: " + *v);
    }
  }

  double get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
      size_t idx = 0;
      double out = std::stod(*v, &idx);
      if (idx != v->size()) throw std::invalid_argument("trailing chars");
      return out;
    } catch (const std::exception&) {
      throw ConfigError(key, "not a number: " + *v);
    }
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
      size_t idx = 0;
      unsigned long long out = std::stoull(*v, &idx);
      if (idx != v->size()) throw std::invalid_argument("trailing chars");
      return static_cast<std::uint64_t>(out);
    } catch (const std::exception&) {
      throw ConfigError(key, "not an unsigned integer: " + *v);
    }
  }

  // Comma-separated unsigned integer list.
  std::vector<std::uint64_t> get_u64_list(const std::string& key) const {
    std::vector<std::uint64_t> out;
    auto v = get(key);
    if (!v) return out;
    for (const std::string& part : split(*v, ',')) {
      std::string_view p = trim(part);
      if (p.empty()) continue;
      try {
        out.push_back(std::stoull(std::string(p)));
      } catch (const std::exception&) {
        throw ConfigError(key, "not an unsigned integer list element: " + std::string(p));
      }
    }
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace treelane::util
