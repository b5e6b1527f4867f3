#include "cqed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

constexpr std::string_view kOutputMarker = "# cqed-readout";

const std::vector<KeySpec> kSchema = {
    {"system", "num_levels", ValueKind::integer, "6"},
    {"system", "omega_10", ValueKind::number, "6000"},
    {"system", "omega_21", ValueKind::number, "5750"},
    {"system", "g0", ValueKind::number, "100"},
    {"system", "level_freqs", ValueKind::number_list, ""},
    {"system", "couplings", ValueKind::number_list, ""},
    {"system", "omega_r", ValueKind::number, "7000"},
    {"system", "kappa", ValueKind::number, "0.03"},

    {"solver", "beta", ValueKind::number, "0.5"},
    {"solver", "max_iterations", ValueKind::integer, "100000"},
    {"solver", "tolerance", ValueKind::number, "1e-10"},
    {"solver", "max_halvings", ValueKind::integer, "4"},

    {"coeffs", "num_levels_list", ValueKind::integer_list, "2, 6"},
    {"coeffs", "omega_r_min", ValueKind::number, "3000"},
    {"coeffs", "omega_r_max", ValueKind::number, "9000"},
    {"coeffs", "points", ValueKind::integer, "601"},
    {"coeffs", "fit_n_max", ValueKind::integer, "4"},

    {"snr", "omega_r_same", ValueKind::number, "4515"},
    {"snr", "omega_r_opposite", ValueKind::number, "7660"},
    {"snr", "t1_us", ValueKind::number, "1"},
    {"snr", "eta", ValueKind::number, "1"},
    {"snr", "kappa_over_2chi", ValueKind::number_list, "0.5, 1, 1.5"},
    {"snr", "nbar_max", ValueKind::number, "0"},
    {"snr", "nbar_points", ValueKind::integer, "100"},

    {"response", "num_levels_list", ValueKind::integer_list, "2, 3, 6"},
    {"response", "levels", ValueKind::integer_list, "0, 1, 2"},
    {"response", "omega_m_offset", ValueKind::number, "0"},
    {"response", "power_min_db", ValueKind::number, "-10"},
    {"response", "power_max_db", ValueKind::number, "100"},
    {"response", "power_step_db", ValueKind::number, "0.25"},
    {"response", "directions", ValueKind::word, "both"},

    {"map", "levels", ValueKind::integer_list, "0, 1"},
    {"map", "omega_m_offset_min", ValueKind::number, "-4"},
    {"map", "omega_m_offset_max", ValueKind::number, "14"},
    {"map", "omega_m_points", ValueKind::integer, "73"},
    {"map", "power_min_db", ValueKind::number, "50"},
    {"map", "power_max_db", ValueKind::number, "90"},
    {"map", "power_points", ValueKind::integer, "81"},
    {"map", "ratio_threshold", ValueKind::number, "1000"},

    {"rates", "omega_m_offset", ValueKind::number, "0"},
    {"rates", "power_min_db", ValueKind::number, "-10"},
    {"rates", "power_max_db", ValueKind::number, "100"},
    {"rates", "power_step_db", ValueKind::number, "0.5"},
    {"rates", "dispersions", ValueKind::number_list, ""},
    {"rates", "noise", ValueKind::word, "one_over_f"},

    {"oracle", "jc_n", ValueKind::integer_list, "0, 1, 10, 1000, 1000000"},
    {"oracle", "full_num_levels", ValueKind::integer, "3"},
    {"oracle", "full_cutoff", ValueKind::integer, "6"},
    {"oracle", "scan_level", ValueKind::integer, "1"},
    {"oracle", "scan_omega_m_offset", ValueKind::number, "1"},
    {"oracle", "scan_power_min_db", ValueKind::number, "30"},
    {"oracle", "scan_power_max_db", ValueKind::number, "90"},
    {"oracle", "scan_power_step_db", ValueKind::number, "0.5"},
    {"oracle", "scan_grid_points", ValueKind::integer, "4000"},
};

const KeySpec* find_key(std::string_view section, std::string_view key) {
  for (const auto& spec : kSchema)
    if (spec.section == section && spec.key == key) return &spec;
  return nullptr;
}

bool section_exists(std::string_view section) {
  return std::any_of(kSchema.begin(), kSchema.end(),
                     [&](const KeySpec& k) { return k.section == section; });
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

// Canonical text for a value of the given kind; nullopt if malformed.
std::optional<std::string> canonicalize(ValueKind kind, std::string_view text) {
  text = trim(text);
  switch (kind) {
    case ValueKind::number: {
      auto v = parse_double(text);
      if (!v) return std::nullopt;
      return format_number(*v);
    }
    case ValueKind::integer: {
      auto v = parse_int(text);
      if (!v) return std::nullopt;
      return std::to_string(*v);
    }
    case ValueKind::number_list:
    case ValueKind::integer_list: {
      std::string out;
      for (auto item : split_list(text)) {
        std::optional<std::string> one =
            canonicalize(kind == ValueKind::number_list ? ValueKind::number : ValueKind::integer, item);
        if (!one) return std::nullopt;
        if (!out.empty()) out += ", ";
        out += *one;
      }
      return out;
    }
    case ValueKind::word: {
      if (text.empty() || text.find_first_of(" \t,=") != std::string_view::npos) return std::nullopt;
      return std::string(text);
    }
  }
  return std::nullopt;
}

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::number: return "a number";
    case ValueKind::integer: return "an integer";
    case ValueKind::number_list: return "a comma-separated list of numbers";
    case ValueKind::integer_list: return "a comma-separated list of integers";
    case ValueKind::word: return "a single word";
  }
  return "a value";
}

}  // namespace

const std::vector<KeySpec>& config_schema() { return kSchema; }

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw Error("format_number: conversion failed");
  return std::string(buffer, ptr);
}

Config Config::defaults() {
  Config c;
  for (const auto& spec : kSchema)
    c.values_[{std::string(spec.section), std::string(spec.key)}] = std::string(spec.default_value);
  return c;
}

void Config::assign(std::string_view section, std::string_view key, std::string_view value, int line) {
  const KeySpec* spec = find_key(section, key);
  if (spec == nullptr)
    throw ConfigError(line, "unknown key '" + std::string(key) + "' in section [" + std::string(section) + "]");
  auto canonical = canonicalize(spec->kind, value);
  if (!canonical)
    throw ConfigError(line, "value for '" + std::string(key) + "' must be " + std::string(kind_name(spec->kind)) +
                                ", got '" + std::string(trim(value)) + "'");
  values_[{std::string(section), std::string(key)}] = *canonical;
}

Config Config::parse(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);

  Config config = defaults();
  const bool from_output = text.substr(0, kOutputMarker.size()) == kOutputMarker;

  std::string section;
  std::set<std::pair<std::string, std::string>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (from_output) {
      // Only the "# " header block carries configuration.
      if (line.substr(0, 2) != "# ") break;
      line.remove_prefix(2);
      if (section.empty() && trim(line).substr(0, 1) != "[") continue;  // tool and command lines
    }

    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!section_exists(section)) throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    if (section.empty()) throw ConfigError(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    if (!seen.emplace(section, key).second)
      throw ConfigError(line_no, "duplicate key '" + key + "' in section [" + section + "]");
    config.assign(section, key, line.substr(eq + 1), line_no);
  }
  return config;
}

Config Config::parse_json(std::string_view text) {
  Config config = defaults();
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ConfigError(0, "malformed JSON document");
  const nlohmann::json& sections = doc.contains("config") ? doc["config"] : doc;
  if (!sections.is_object()) throw ConfigError(0, "JSON 'config' must be an object");
  for (const auto& [section, keys] : sections.items()) {
    if (!section_exists(section)) throw ConfigError(0, "unknown section [" + section + "]");
    if (!keys.is_object()) throw ConfigError(0, "section [" + section + "] must be an object");
    for (const auto& [key, value] : keys.items()) {
      std::string text_value;
      if (value.is_array()) {
        for (const auto& item : value) {
          if (!text_value.empty()) text_value += ", ";
          text_value += item.is_string() ? item.get<std::string>() : item.dump();
        }
      } else {
        text_value = value.is_string() ? value.get<std::string>() : value.dump();
      }
      config.assign(section, key, text_value, 0);
    }
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void Config::set(std::string_view section, std::string_view key, std::string_view value) {
  assign(section, key, value, 0);
}

const std::string& Config::raw(std::string_view section, std::string_view key) const {
  auto it = values_.find({std::string(section), std::string(key)});
  if (it == values_.end())
    throw ConfigError(0, "no such key '" + std::string(key) + "' in [" + std::string(section) + "]");
  return it->second;
}

double Config::number(std::string_view section, std::string_view key) const {
  return *parse_double(raw(section, key));
}

std::int64_t Config::integer(std::string_view section, std::string_view key) const {
  return *parse_int(raw(section, key));
}

std::vector<double> Config::numbers(std::string_view section, std::string_view key) const {
  std::vector<double> out;
  for (auto item : split_list(raw(section, key))) out.push_back(*parse_double(item));
  return out;
}

std::vector<std::int64_t> Config::integers(std::string_view section, std::string_view key) const {
  std::vector<std::int64_t> out;
  for (auto item : split_list(raw(section, key))) out.push_back(*parse_int(item));
  return out;
}

std::string Config::word(std::string_view section, std::string_view key) const { return raw(section, key); }

std::string Config::render(std::string_view prefix) const {
  std::string out;
  std::string_view current;
  for (const auto& spec : kSchema) {
    if (spec.section != current) {
      current = spec.section;
      out.append(prefix).append("[").append(current).append("]\n");
    }
    out.append(prefix).append(spec.key).append(" = ").append(raw(spec.section, spec.key)).append("\n");
  }
  return out;
}

MlsSpec mls_from_config(const Config& config, std::optional<int> num_levels) {
  const auto freqs = config.numbers("system", "level_freqs");
  const auto couplings = config.numbers("system", "couplings");
  try {
    if (!freqs.empty() || !couplings.empty()) {
      MlsSpec full(freqs, couplings);
      if (!num_levels) return full;
      if (*num_levels < 1 || static_cast<std::size_t>(*num_levels) > full.num_levels())
        throw ConfigError(0, "requested " + std::to_string(*num_levels) + " levels but level_freqs has " +
                                 std::to_string(full.num_levels()));
      return MlsSpec(std::vector<double>(freqs.begin(), freqs.begin() + *num_levels),
                     std::vector<double>(couplings.begin(), couplings.begin() + (*num_levels - 1)));
    }
    const auto m = num_levels ? *num_levels : config.integer("system", "num_levels");
    return build_transmon_spec(config.number("system", "omega_10"), config.number("system", "omega_21"),
                               config.number("system", "g0"), static_cast<int>(m));
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, std::string("[system]: ") + e.what());
  }
}

SystemSpec system_from_config(const Config& config, std::optional<int> num_levels,
                              std::optional<double> omega_r) {
  try {
    return SystemSpec(mls_from_config(config, num_levels),
                      omega_r ? *omega_r : config.number("system", "omega_r"), config.number("system", "kappa"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, std::string("[system]: ") + e.what());
  }
}

SolverOptions solver_from_config(const Config& config) {
  SolverOptions options;
  options.beta = config.number("solver", "beta");
  options.max_iterations = static_cast<int>(config.integer("solver", "max_iterations"));
  options.tolerance = config.number("solver", "tolerance");
  options.max_halvings = static_cast<int>(config.integer("solver", "max_halvings"));
  if (!(options.beta > 0.0 && options.beta <= 1.0)) throw ConfigError(0, "[solver] beta must lie in (0, 1]");
  if (options.max_iterations < 1) throw ConfigError(0, "[solver] max_iterations must be >= 1");
  if (!(options.tolerance > 0.0)) throw ConfigError(0, "[solver] tolerance must be positive");
  if (options.max_halvings < 0) throw ConfigError(0, "[solver] max_halvings must be >= 0");
  return options;
}

std::vector<double> stepped_grid(double min, double max, double step) {
  if (!(step > 0.0) || !(max >= min)) throw ConfigError(0, "power grid needs step > 0 and max >= min");
  std::vector<double> out;
  const auto count = static_cast<std::int64_t>(std::floor((max - min) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) out.push_back(min + static_cast<double>(k) * step);
  return out;
}

std::vector<double> linear_grid(double min, double max, std::int64_t points) {
  if (points < 1) throw ConfigError(0, "grid needs at least one point");
  if (points == 1) return {min};
  if (!(max > min)) throw ConfigError(0, "grid needs max > min");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (std::int64_t k = 0; k < points; ++k)
    out[k] = min + (max - min) * static_cast<double>(k) / static_cast<double>(points - 1);
  return out;
}

}  // namespace cqed
