#pragma once

// Config file grammar: one `dotted.key = value` per line. `#` starts a
// comment; blank lines are ignored; every key is optional and missing keys
// keep their default values. Values are plain decimal or scientific numbers.
//
//   # defaults, except the SNR
//   link.rho_t_db = 22
//   geometry.cell_side_m = 10

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pinchsec/config.hpp"

namespace pinchsec {

class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

namespace detail {

struct ConfigKey {
  std::string_view name;
  void (*set)(SystemConfig&, double);
  std::optional<double> (*get)(const SystemConfig&);
};

#define PINCHSEC_KEY(name, member)                                        \
  ConfigKey {                                                             \
    name, [](SystemConfig& c, double v) { c.member = v; },               \
        [](const SystemConfig& c) -> std::optional<double> { return c.member; } \
  }

inline constexpr ConfigKey kConfigKeys[] = {
    PINCHSEC_KEY("constants.carrier_frequency_hz", constants.carrier_frequency_hz),
    PINCHSEC_KEY("constants.light_speed_m_s", constants.light_speed_m_s),
    PINCHSEC_KEY("constants.effective_refractive_index",
                 constants.effective_refractive_index),
    PINCHSEC_KEY("constants.coupling_coefficient_per_m",
                 constants.coupling_coefficient_per_m),
    PINCHSEC_KEY("constants.coupling_efficiency", constants.coupling_efficiency),
    PINCHSEC_KEY("geometry.waveguide_height_m", geometry.waveguide_height_m),
    PINCHSEC_KEY("geometry.cell1_center_offset_m", geometry.cell1_center_offset_m),
    PINCHSEC_KEY("geometry.cell2_center_offset_m", geometry.cell2_center_offset_m),
    PINCHSEC_KEY("geometry.cell_side_m", geometry.cell_side_m),
    PINCHSEC_KEY("geometry.cell1_side_m", geometry.cell1_side_m),
    PINCHSEC_KEY("geometry.cell2_side_m", geometry.cell2_side_m),
    PINCHSEC_KEY("allocation.alpha1", allocation.alpha1),
    PINCHSEC_KEY("allocation.alpha2", allocation.alpha2),
    PINCHSEC_KEY("link.rho_t_db", link.rho_t_db),
    PINCHSEC_KEY("link.noise_floor_offset_db", link.noise_floor_offset_db),
    PINCHSEC_KEY("link.gamma1_db", link.gamma1_db),
    PINCHSEC_KEY("link.gamma2_db", link.gamma2_db),
};

#undef PINCHSEC_KEY

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigParseError(std::string(key),
                           std::string(key) + ": not a number: '" +
                               std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

// Sets one dotted key. Throws ConfigParseError naming the key when it is
// unknown or the value does not parse.
inline void apply_setting(SystemConfig& config, std::string_view key,
                          std::string_view value) {
  key = detail::trim(key);
  for (const auto& k : detail::kConfigKeys) {
    if (k.name == key) {
      k.set(config, detail::parse_number(key, detail::trim(value)));
      return;
    }
  }
  throw ConfigParseError(std::string(key),
                         "unknown config key '" + std::string(key) + "'");
}

// Accepts "key=value" as used by --set on the command line.
inline void apply_assignment(SystemConfig& config, std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigParseError(std::string(detail::trim(line)),
                           "expected key = value, got '" + std::string(line) +
                               "'");
  }
  apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
}

inline SystemConfig parse_config(std::istream& in,
                                 SystemConfig config = default_config()) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    try {
      apply_assignment(config, line);
    } catch (const ConfigParseError& e) {
      throw ConfigParseError(e.key(), "line " + std::to_string(line_no) +
                                          ": " + e.what());
    }
  }
  return config;
}

inline SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigParseError("--config",
                           "--config: cannot read config file '" + path + "'");
  }
  return parse_config(in);
}

// Writes every set key with round-trip precision.
inline void write_config(std::ostream& out, const SystemConfig& config) {
  char buf[64];
  for (const auto& k : detail::kConfigKeys) {
    const auto v = k.get(config);
    if (!v) continue;
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    out << k.name << " = " << buf << '\n';
  }
}

}  // namespace pinchsec
