#pragma once

// INI-style run configuration: `[section]` headers and `key = value` lines,
// `#` or `;` comments. Every key has a schema entry with a default, so the
// fully resolved configuration can be echoed into outputs and re-read.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqed/model.hpp"
#include "cqed/response.hpp"

namespace cqed {

enum class ValueKind { number, integer, number_list, integer_list, word };

struct KeySpec {
  std::string_view section;
  std::string_view key;
  ValueKind kind;
  std::string_view default_value;
};

/// All accepted keys in output order.
const std::vector<KeySpec>& config_schema();

class Config {
 public:
  /// Every key at its default.
  static Config defaults();

  /// Parses INI text on top of the defaults. Unknown sections or keys,
  /// duplicates and malformed values raise ConfigError with the line number.
  /// Text produced by an earlier run (lines prefixed with "# ") is accepted,
  /// so any output file can be fed back as a config. Text starting with `{`
  /// is read as JSON: either {section: {key: value}} or a JSON output file.
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  double number(std::string_view section, std::string_view key) const;
  std::int64_t integer(std::string_view section, std::string_view key) const;
  std::vector<double> numbers(std::string_view section, std::string_view key) const;
  std::vector<std::int64_t> integers(std::string_view section, std::string_view key) const;
  std::string word(std::string_view section, std::string_view key) const;

  /// Validates and stores a value (line 0 in error messages).
  void set(std::string_view section, std::string_view key, std::string_view value);

  /// Resolved config as INI text, each line prefixed by `prefix`.
  std::string render(std::string_view prefix = "") const;

  friend bool operator==(const Config&, const Config&) = default;

 private:
  static Config parse_json(std::string_view text);
  void assign(std::string_view section, std::string_view key, std::string_view value, int line);
  const std::string& raw(std::string_view section, std::string_view key) const;

  std::map<std::pair<std::string, std::string>, std::string> values_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

/// MLS from [system]: explicit level_freqs/couplings when given, otherwise the
/// transmon ladder with `num_levels` (or the override).
MlsSpec mls_from_config(const Config& config, std::optional<int> num_levels = std::nullopt);
SystemSpec system_from_config(const Config& config, std::optional<int> num_levels = std::nullopt,
                              std::optional<double> omega_r = std::nullopt);
SolverOptions solver_from_config(const Config& config);

/// Inclusive grid min, min+step, ... up to max (within 1e-9 step).
std::vector<double> stepped_grid(double min, double max, double step);
/// `points` evenly spaced values on [min, max].
std::vector<double> linear_grid(double min, double max, std::int64_t points);

}  // namespace cqed
