#pragma once

// Scenario parameters for a two-user pinching-antenna NOMA downlink, the
// unit conversions they need, and validation that reports every violated
// invariant at once.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinchsec {

// ----------------------------------------------------------------------------
// Unit conversions
// ----------------------------------------------------------------------------

inline double db_to_linear(double value_db) {
  if (!std::isfinite(value_db)) {
    throw std::domain_error("db_to_linear: non-finite input");
  }
  return std::pow(10.0, value_db / 10.0);
}

inline double linear_to_db(double ratio) {
  if (!std::isfinite(ratio) || ratio <= 0.0) {
    throw std::domain_error("linear_to_db: input must be finite and positive");
  }
  return 10.0 * std::log10(ratio);
}

// ----------------------------------------------------------------------------
// Configuration bundle
// ----------------------------------------------------------------------------

struct PhysicalConstants {
  double carrier_frequency_hz = 28e9;
  double light_speed_m_s = 3e8;
  double effective_refractive_index = 1.4;
  double coupling_coefficient_per_m = 100.0;  // kappa
  double coupling_efficiency = 1.0;           // F, in (0, 1]

  double wavelength_m() const { return light_speed_m_s / carrier_frequency_hz; }
  double guided_wavelength_m() const {
    return wavelength_m() / effective_refractive_index;
  }
  // Longest admissible coupling length, pi / (2 kappa).
  double max_coupling_length_m() const {
    return std::numbers::pi / (2.0 * coupling_coefficient_per_m);
  }
};

// Two square activity cells of side D centred at (-D1, 0, 0) and (D2, 0, 0),
// under a waveguide running along x at height d. The per-cell side overrides
// let the two cells be sized independently; unset means "use cell_side_m".
struct Geometry {
  double waveguide_height_m = 3.0;
  double cell1_center_offset_m = 10.0;
  double cell2_center_offset_m = 10.0;
  double cell_side_m = 10.0;
  std::optional<double> cell1_side_m;
  std::optional<double> cell2_side_m;

  double side1() const { return cell1_side_m.value_or(cell_side_m); }
  double side2() const { return cell2_side_m.value_or(cell_side_m); }
};

struct NomaAllocation {
  double alpha1 = 0.99;  // public signal s1
  double alpha2 = 0.01;  // confidential signal s2
};

struct LinkBudget {
  double rho_t_db = 20.0;
  // Added to rho_t_db before linearization. See README for why 90 dB.
  double noise_floor_offset_db = 90.0;
  double gamma1_db = 10.0;
  double gamma2_db = 15.0;

  double rho_t_linear() const {
    return db_to_linear(rho_t_db + noise_floor_offset_db);
  }
  double gamma1_linear() const { return db_to_linear(gamma1_db); }
  double gamma2_linear() const { return db_to_linear(gamma2_db); }
};

struct SystemConfig {
  PhysicalConstants constants;
  Geometry geometry;
  NomaAllocation allocation;
  LinkBudget link;
};

inline SystemConfig default_config() { return SystemConfig{}; }

// eta = lambda^2 / (16 pi^2): free-space gain at the 1 m reference distance.
inline double free_space_factor(const PhysicalConstants& constants) {
  const double lambda = constants.wavelength_m();
  return lambda * lambda / (16.0 * std::numbers::pi * std::numbers::pi);
}

// ----------------------------------------------------------------------------
// Validation
// ----------------------------------------------------------------------------

enum class Severity { kWarning, kError };

struct Issue {
  Severity severity;
  std::string code;     // machine-readable, stable
  std::string message;  // human-readable, names the offending field
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const {
    for (const auto& issue : issues) {
      if (issue.severity == Severity::kError) return false;
    }
    return true;
  }
  bool has(const std::string& code) const {
    for (const auto& issue : issues) {
      if (issue.code == code) return true;
    }
    return false;
  }
  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& issue : issues) n += issue.severity == Severity::kError;
    return n;
  }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(ValidationReport report)
      : std::runtime_error(summarize(report)), report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  static std::string summarize(const ValidationReport& report) {
    std::string out = "invalid configuration:";
    for (const auto& issue : report.issues) {
      if (issue.severity != Severity::kError) continue;
      out += "\n  " + issue.code + ": " + issue.message;
    }
    return out;
  }

  ValidationReport report_;
};

namespace detail {

inline void require_finite(ValidationReport& report, const char* field,
                           double value) {
  if (!std::isfinite(value)) {
    report.issues.push_back({Severity::kError, "non_finite_value",
                             std::string(field) + " must be finite"});
  }
}

}  // namespace detail

inline ValidationReport validate(const SystemConfig& config) {
  ValidationReport report;
  auto error = [&](std::string code, std::string message) {
    report.issues.push_back(
        {Severity::kError, std::move(code), std::move(message)});
  };
  auto warn = [&](std::string code, std::string message) {
    report.issues.push_back(
        {Severity::kWarning, std::move(code), std::move(message)});
  };

  const auto& c = config.constants;
  const auto& g = config.geometry;
  const auto& a = config.allocation;
  const auto& l = config.link;

  const std::pair<const char*, double> fields[] = {
      {"constants.carrier_frequency_hz", c.carrier_frequency_hz},
      {"constants.light_speed_m_s", c.light_speed_m_s},
      {"constants.effective_refractive_index", c.effective_refractive_index},
      {"constants.coupling_coefficient_per_m", c.coupling_coefficient_per_m},
      {"constants.coupling_efficiency", c.coupling_efficiency},
      {"geometry.waveguide_height_m", g.waveguide_height_m},
      {"geometry.cell1_center_offset_m", g.cell1_center_offset_m},
      {"geometry.cell2_center_offset_m", g.cell2_center_offset_m},
      {"geometry.cell_side_m", g.cell_side_m},
      {"geometry.cell1_side_m", g.side1()},
      {"geometry.cell2_side_m", g.side2()},
      {"allocation.alpha1", a.alpha1},
      {"allocation.alpha2", a.alpha2},
      {"link.rho_t_db", l.rho_t_db},
      {"link.noise_floor_offset_db", l.noise_floor_offset_db},
      {"link.gamma1_db", l.gamma1_db},
      {"link.gamma2_db", l.gamma2_db},
  };
  bool all_finite = true;
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      detail::require_finite(report, name, value);
      all_finite = false;
    }
  }
  if (!all_finite) return report;

  if (c.carrier_frequency_hz <= 0.0) {
    error("carrier_frequency_nonpositive",
          "constants.carrier_frequency_hz must be > 0");
  }
  if (c.light_speed_m_s <= 0.0) {
    error("light_speed_nonpositive", "constants.light_speed_m_s must be > 0");
  }
  if (c.effective_refractive_index < 1.0) {
    error("refractive_index_below_one",
          "constants.effective_refractive_index must be >= 1");
  }
  if (c.coupling_coefficient_per_m <= 0.0) {
    error("coupling_coefficient_nonpositive",
          "constants.coupling_coefficient_per_m must be > 0");
  }
  if (!(c.coupling_efficiency > 0.0 && c.coupling_efficiency <= 1.0)) {
    error("coupling_efficiency_out_of_range",
          "constants.coupling_efficiency must lie in (0, 1]");
  }

  if (g.waveguide_height_m <= 0.0) {
    error("waveguide_height_nonpositive",
          "geometry.waveguide_height_m must be > 0");
  }
  if (g.cell1_center_offset_m <= 0.0 || g.cell2_center_offset_m <= 0.0) {
    error("cell_offset_nonpositive",
          "geometry.cell1_center_offset_m and cell2_center_offset_m must be "
          "> 0");
  }
  if (g.side1() <= 0.0 || g.side2() <= 0.0) {
    error("cell_side_nonpositive", "geometry cell sides must be > 0");
  } else if ((g.side1() + g.side2()) / 2.0 >=
             g.cell1_center_offset_m + g.cell2_center_offset_m) {
    error("overlapping_cells",
          "geometry: cells overlap (need (side1 + side2) / 2 < D1 + D2)");
  }

  if (std::abs(a.alpha1 + a.alpha2 - 1.0) > 1e-12) {
    error("alpha_sum_not_one",
          "allocation.alpha1 + allocation.alpha2 must equal 1");
  }
  if (!(a.alpha1 > 0.0 && a.alpha1 < 1.0) ||
      !(a.alpha2 > 0.0 && a.alpha2 < 1.0)) {
    error("alpha_out_of_range", "allocation alphas must lie in (0, 1)");
  } else {
    if (a.alpha1 <= a.alpha2) {
      warn("alpha1_not_dominant",
           "allocation.alpha1 <= allocation.alpha2; the confidential signal "
           "gets the larger share");
    }
    const double ratio = a.alpha1 / a.alpha2;
    if (ratio <= l.gamma1_linear()) {
      warn("alpha_ratio_below_gamma1",
           "alpha1 / alpha2 <= gamma1 (linear): s1 is never decodable and the "
           "secrecy outage probability is 1");
    }
  }

  if (c.carrier_frequency_hz > 0.0 && c.light_speed_m_s > 0.0) {
    const double eta = free_space_factor(c);
    if (!std::isfinite(eta) || eta <= 0.0) {
      error("free_space_factor_degenerate",
            "lambda^2 / (16 pi^2) is not finite and positive");
    }
  }
  const double rho = l.rho_t_db + l.noise_floor_offset_db;
  if (!std::isfinite(std::pow(10.0, rho / 10.0)) ||
      std::pow(10.0, rho / 10.0) <= 0.0) {
    error("rho_t_degenerate",
          "link.rho_t_db + link.noise_floor_offset_db overflows");
  }
  return report;
}

// Throws ConfigError carrying every error if the config is not valid.
inline const SystemConfig& require_valid(const SystemConfig& config) {
  auto report = validate(config);
  if (!report.ok()) throw ConfigError(std::move(report));
  return config;
}

}  // namespace pinchsec
