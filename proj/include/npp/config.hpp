#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "npp/types.hpp"

namespace npp {

/// Invalid configuration or command-line usage (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ConfigKey {
  std::string_view key;
  std::string_view default_value;
  std::string_view help;
};

/// Every recognised key with its default, in print order.
const std::vector<ConfigKey>& config_schema();

/// Flat `key = value` configuration. Lines starting with '#' are comments.
/// Unknown keys are rejected.
class ExperimentConfig {
 public:
  ExperimentConfig();  // all defaults

  static ExperimentConfig parse(std::string_view text, const std::string& base_dir = {});
  static ExperimentConfig load(const std::string& path);

  void set(std::string_view key, std::string value);
  const std::string& get(std::string_view key) const;
  std::string path(std::string_view key) const;  // resolved against the config file directory
  std::int64_t get_int(std::string_view key) const;
  double get_double(std::string_view key) const;
  bool get_bool(std::string_view key) const;

  std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int("seed")); }

  /// FNV-1a over the canonical `key=value` listing, as 16 hex digits.
  std::string hash() const;
  /// Canonical listing, one `key = value` per line in schema order.
  void write(std::ostream& out) const;

  /// Checks value types and that referenced input files exist.
  void validate() const;

  const std::string& base_dir() const { return base_dir_; }

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::string base_dir_;
};

void print_default_config(std::ostream& out);

}  // namespace npp
