#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <stdexcept>
#include <string_view>

#include "json.hpp"

namespace liouville::lab {

enum class Experiment { HaarCheck, Classical, Wigner, Ergodic, Pumping, Metric };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Experiment e) noexcept;
Experiment parse_experiment(std::string_view name);
std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_format(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr const char* kOutDirEnv = "LIOUVILLE_LAB_OUT";

/// Thrown for anything the user can fix by changing the configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Experiment experiment = Experiment::Ergodic;
  /// Experiment parameters; always holds every key from default_parameters().
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::Csv;

  /// Full parameter set for `e` with default values. Strings for enumerations,
  /// numbers otherwise.
  static nlohmann::json default_parameters(Experiment e);
  static RunConfig defaults(Experiment e);

  /// Merges `overrides` into parameters; throws ConfigError on unknown keys or
  /// type mismatches.
  void set_parameters(const nlohmann::json& overrides);

  /// Applies a config document {experiment, seed, out_dir, format, parameters}.
  /// Unknown keys are rejected. A differing experiment name is an error.
  void apply_document(const nlohmann::json& doc);

  double number(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  std::string text(const std::string& key) const;

  nlohmann::json to_json() const;
};

/// Reads a JSON config file; ConfigError on I/O or parse failure.
nlohmann::json load_config_file(const std::filesystem::path& path);

}  // namespace liouville::lab
