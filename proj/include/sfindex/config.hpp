#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfindex/crossed_product.hpp"

namespace sfindex {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration. Keys are dotted; a "[section]" line prefixes
/// the keys that follow it. Command-line overrides are merged with set().
class RunConfig {
 public:
  static const std::vector<std::string>& known_keys();
  /// Known keys closest to an unknown one, best first.
  static std::vector<std::string> suggestions(const std::string& key);

  /// Throws ConfigError for unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  void merge_text(const std::string& text, const std::string& origin = "<text>");
  void merge_file(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  /// Comma-separated list.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  std::uint64_t seed() const;
  int threads() const;
  std::string format() const { return get("run.format", "json"); }
  std::string output_dir() const { return get("run.output_dir", ""); }
  ModelParams model() const;

  /// Entries in key order.
  nlohmann::json to_json() const;

 private:
  std::map<std::string, std::string> entries_;
};

/// Seed from SFINDEX_SEED if set and valid, otherwise the fallback.
std::uint64_t default_seed(std::uint64_t fallback = 1);

}  // namespace sfindex
