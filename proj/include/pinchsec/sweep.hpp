#pragma once

// Parameter sweeps and the plot-ready CSV they produce.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pinchsec/config.hpp"
#include "pinchsec/coupling.hpp"
#include "pinchsec/montecarlo.hpp"
#include "pinchsec/optimizer.hpp"
#include "pinchsec/secrecy.hpp"

namespace pinchsec {

class SweepError : public std::invalid_argument {
 public:
  SweepError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class SweepAxis { kRhoTDb, kL1, kL2, kCellSideC1, kCellSideC2, kAlpha2 };

inline std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kRhoTDb: return "rho_t_db";
    case SweepAxis::kL1: return "l1";
    case SweepAxis::kL2: return "l2";
    case SweepAxis::kCellSideC1: return "cell_side_c1";
    case SweepAxis::kCellSideC2: return "cell_side_c2";
    case SweepAxis::kAlpha2: return "alpha2";
  }
  return "?";
}

inline SweepAxis parse_axis(std::string_view name) {
  for (auto axis : {SweepAxis::kRhoTDb, SweepAxis::kL1, SweepAxis::kL2,
                    SweepAxis::kCellSideC1, SweepAxis::kCellSideC2,
                    SweepAxis::kAlpha2}) {
    if (to_string(axis) == name) return axis;
  }
  throw SweepError("axis", "unknown sweep axis '" + std::string(name) + "'");
}

struct SweepModes {
  bool closed_form = false;
  bool monte_carlo = false;
  bool fixed_antenna_mc = false;
  bool optimize = false;

  bool any() const {
    return closed_form || monte_carlo || fixed_antenna_mc || optimize;
  }
};

// Comma-separated subset of closed_form, monte_carlo, fixed_antenna_mc,
// optimize.
inline SweepModes parse_modes(std::string_view list) {
  SweepModes modes;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = list.substr(0, comma);
    if (item == "closed_form") {
      modes.closed_form = true;
    } else if (item == "monte_carlo") {
      modes.monte_carlo = true;
    } else if (item == "fixed_antenna_mc") {
      modes.fixed_antenna_mc = true;
    } else if (item == "optimize") {
      modes.optimize = true;
    } else {
      throw SweepError("modes", "unknown sweep mode '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return modes;
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::kRhoTDb;
  double start = 15.0;
  double stop = 40.0;
  double step = 1.0;
  SweepModes modes;

  void validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
      throw SweepError("start", "sweep needs finite start < stop");
    }
    if (!std::isfinite(step) || !(step > 0.0)) {
      throw SweepError("step", "sweep step must be > 0");
    }
    if (!modes.any()) throw SweepError("modes", "sweep needs at least one mode");
    if (modes.optimize &&
        (axis == SweepAxis::kL1 || axis == SweepAxis::kL2)) {
      throw SweepError("modes",
                       "optimize mode cannot sweep a coupling length axis");
    }
  }

  // start, start + step, ... up to stop (inclusive within 1e-9 steps).
  std::vector<double> points() const {
    validate();
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) out.push_back(start + step * i);
    return out;
  }
};

// ----------------------------------------------------------------------------
// CSV
// ----------------------------------------------------------------------------

struct CsvRow {
  double axis_value = 0.0;
  std::optional<double> l1, l2, eps1, eps2;
  std::optional<double> omega1, omega2, omega3, omega4;
  std::optional<double> prob_omega1, prob_omega2, sop_cf;
  std::optional<double> sop_mc, mc_stderr, sop_fixed_mc;
  std::optional<std::string> case_tag;
};

inline constexpr std::string_view kCsvHeader =
    "axis_value,l1,l2,eps1,eps2,omega1,omega2,omega3,omega4,prob_omega1,"
    "prob_omega2,sop_cf,sop_mc,mc_stderr,sop_fixed_mc,case_tag";

// Scientific notation, 9 significant digits.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

inline std::string format_csv_row(const CsvRow& row) {
  std::string out = format_number(row.axis_value);
  auto field = [&](const std::optional<double>& v) {
    out += ',';
    if (v) out += format_number(*v);
  };
  for (const auto* v : {&row.l1, &row.l2, &row.eps1, &row.eps2, &row.omega1,
                        &row.omega2, &row.omega3, &row.omega4,
                        &row.prob_omega1, &row.prob_omega2, &row.sop_cf,
                        &row.sop_mc, &row.mc_stderr, &row.sop_fixed_mc}) {
    field(*v);
  }
  out += ',';
  if (row.case_tag) out += *row.case_tag;
  return out;
}

inline void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) out << format_csv_row(row) << '\n';
}

inline void fill_closed_form(CsvRow& row, const SopBreakdown& b) {
  row.eps1 = b.eps.eps1;
  row.eps2 = b.eps.eps2;
  row.omega1 = b.omega_set.omega1;
  row.omega2 = b.omega_set.omega2;
  row.omega3 = b.omega_set.omega3;
  row.omega4 = b.omega_set.omega4;
  row.prob_omega1 = b.prob_omega1;
  row.prob_omega2 = b.prob_omega2;
  row.sop_cf = b.sop;
}

// ----------------------------------------------------------------------------
// Sweep driver
// ----------------------------------------------------------------------------

inline void apply_axis(SystemConfig& config, CouplingLengths& lengths,
                       SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kRhoTDb: config.link.rho_t_db = value; break;
    case SweepAxis::kL1: lengths.l1 = value; break;
    case SweepAxis::kL2: lengths.l2 = value; break;
    case SweepAxis::kCellSideC1: config.geometry.cell1_side_m = value; break;
    case SweepAxis::kCellSideC2: config.geometry.cell2_side_m = value; break;
    case SweepAxis::kAlpha2:
      config.allocation.alpha2 = value;
      config.allocation.alpha1 = 1.0 - value;
      break;
  }
}

// Points run in axis order. Monte Carlo columns reuse the same seed at every
// point (common random numbers), so curves are smooth across the axis.
inline std::vector<CsvRow> run_sweep(const SystemConfig& base,
                                     const CouplingLengths& base_lengths,
                                     const SweepSpec& spec,
                                     const McSettings& mc) {
  std::vector<CsvRow> rows;
  for (const double x : spec.points()) {
    SystemConfig config = base;
    CouplingLengths lengths = base_lengths;
    apply_axis(config, lengths, spec.axis, x);
    require_valid(config);
    if (!lengths_admissible(lengths,
                            config.constants.coupling_coefficient_per_m)) {
      throw SweepError(std::string(to_string(spec.axis)),
                       "coupling lengths outside (0, pi / (2 kappa)] at " +
                           format_number(x));
    }

    CsvRow row;
    row.axis_value = x;
    if (spec.modes.optimize) {
      const auto result = solve_p1(config);
      lengths = result.lengths();
      row.case_tag = std::string(to_string(result.case_tag));
    }
    row.l1 = lengths.l1;
    row.l2 = lengths.l2;
    if (spec.modes.closed_form || spec.modes.optimize) {
      fill_closed_form(row, sop_closed_form(config, lengths));
    }
    if (spec.modes.monte_carlo) {
      const auto est = estimate_sop(config, lengths, mc);
      row.sop_mc = est.sop_hat;
      row.mc_stderr = est.std_err;
    }
    if (spec.modes.fixed_antenna_mc) {
      row.sop_fixed_mc = estimate_sop_fixed_antenna(config, mc).sop_hat;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// SOP versus l1 at fixed l2: l1 = k * step over (0, pi / (2 kappa)], with the
// exact upper end appended when it is not on the step grid.
inline std::vector<CsvRow> l1_landscape(const SystemConfig& config, double l2,
                                        double step = 1e-5) {
  const double max_len = config.constants.max_coupling_length_m();
  std::vector<CsvRow> rows;
  auto emit = [&](double l1) {
    CsvRow row;
    row.axis_value = l1;
    row.l1 = l1;
    row.l2 = l2;
    fill_closed_form(row, sop_closed_form(config, {l1, l2}));
    rows.push_back(std::move(row));
  };
  const auto n = static_cast<long>(std::floor(max_len / step + 1e-9));
  for (long k = 1; k <= n; ++k) emit(step * k);
  if (max_len - step * n > 1e-15) emit(max_len);
  return rows;
}

// ----------------------------------------------------------------------------
// Theoretical vs simulated optimum coupling length
// ----------------------------------------------------------------------------

struct Table1Row {
  double rho_t_db = 0.0;
  CaseTag case_tag = CaseTag::kInfeasible;
  Interval l1_theory;  // lower == upper for a point optimum
  Interval l1_sim;     // same convention, from the step grid
  double min_sop = 1.0;
};

inline constexpr std::string_view kTable1Header =
    "rho_t_db,case_tag,l1_theory_lo,l1_theory_hi,l1_sim_lo,l1_sim_hi,min_sop";

// Grid step for the simulated column; mirrors a 0.1 mm search granularity.
inline constexpr double kTable1SimStep = 1e-4;

inline Table1Row table1_row(SystemConfig config, double rho_t_db) {
  config.link.rho_t_db = rho_t_db;
  require_valid(config);
  const auto result = solve_p1(config);

  Table1Row row;
  row.rho_t_db = rho_t_db;
  row.case_tag = result.case_tag;
  row.min_sop = result.min_sop;
  if (result.l1.interval) {
    row.l1_theory = *result.l1.interval;
  } else {
    row.l1_theory = {result.l1.value, result.l1.value};
  }

  const double max_len = config.constants.max_coupling_length_m();
  const auto n = static_cast<long>(std::floor(max_len / kTable1SimStep + 1e-9));
  double best = 2.0;
  long best_k = 1;
  long first_zero = -1;
  long last_zero = -1;
  for (long k = 1; k <= n; ++k) {
    const double sop =
        sop_closed_form(config, {kTable1SimStep * k, max_len}).sop;
    if (sop < best) {
      best = sop;
      best_k = k;
    }
    if (sop == 0.0) {
      if (first_zero < 0) first_zero = k;
      last_zero = k;
    }
  }
  if (first_zero > 0) {
    row.l1_sim = {kTable1SimStep * first_zero, kTable1SimStep * last_zero};
  } else {
    row.l1_sim = {kTable1SimStep * best_k, kTable1SimStep * best_k};
  }
  return row;
}

inline std::vector<Table1Row> table1(const SystemConfig& config,
                                     double first_db = 17.0,
                                     double last_db = 23.0) {
  std::vector<Table1Row> rows;
  for (double db = first_db; db <= last_db + 1e-9; db += 1.0) {
    rows.push_back(table1_row(config, db));
  }
  return rows;
}

inline void write_table1(std::ostream& out, const std::vector<Table1Row>& rows) {
  out << kTable1Header << '\n';
  for (const auto& r : rows) {
    out << format_number(r.rho_t_db) << ',' << to_string(r.case_tag) << ','
        << format_number(r.l1_theory.lower) << ','
        << format_number(r.l1_theory.upper) << ','
        << format_number(r.l1_sim.lower) << ',' << format_number(r.l1_sim.upper)
        << ',' << format_number(r.min_sop) << '\n';
  }
}

// ----------------------------------------------------------------------------
// Structured text reports
// ----------------------------------------------------------------------------

inline void write_sop_report(std::ostream& out, const SystemConfig& config,
                             const CouplingLengths& lengths) {
  const auto b = sop_closed_form(config, lengths);
  const auto dist = security_distances(b.omega_set);
  const auto asym = sop_asymptotic(config, lengths);
  auto kv = [&](std::string_view key, double v) {
    out << key << " = " << format_number(v) << '\n';
  };
  kv("rho_t_db", config.link.rho_t_db);
  kv("l1", lengths.l1);
  kv("l2", lengths.l2);
  kv("eps1", b.eps.eps1);
  kv("eps2", b.eps.eps2);
  kv("omega1", b.omega_set.omega1);
  kv("omega2", b.omega_set.omega2);
  kv("omega3", b.omega_set.omega3);
  kv("omega4", b.omega_set.omega4);
  kv("prob_omega1", b.prob_omega1);
  out << "branch1 = " << to_string(b.branch1) << '\n';
  kv("prob_omega2", b.prob_omega2);
  out << "branch2 = " << to_string(b.branch2) << '\n';
  kv("sop_cf", b.sop);
  kv("max_eavesdrop_m", dist.max_eavesdrop_m);
  kv("max_reliable_u1_m", dist.max_reliable_u1_m);
  kv("max_reliable_u2_m", dist.max_reliable_u2_m);
  kv("sop_limit", asym.limit);
  out << "onset_rho_t_db = "
      << (asym.onset_rho_t_db ? format_number(*asym.onset_rho_t_db) : "none")
      << '\n';
}

inline void write_optimizer_report(std::ostream& out,
                                   const SystemConfig& config,
                                   const OptimizerResult& r) {
  auto kv = [&](std::string_view key, double v) {
    out << key << " = " << format_number(v) << '\n';
  };
  kv("rho_t_db", config.link.rho_t_db);
  out << "case_tag = " << to_string(r.case_tag) << '\n';
  kv("l1", r.l1.value);
  if (r.l1.interval) {
    kv("l1_lower", r.l1.interval->lower);
    kv("l1_upper", r.l1.interval->upper);
  }
  kv("l2", r.l2.value);
  if (r.l2.interval) {
    kv("l2_lower", r.l2.interval->lower);
    kv("l2_upper", r.l2.interval->upper);
  }
  kv("min_sop", r.min_sop);
  kv("prob_omega1", r.certificate.prob_omega1);
  kv("prob_omega2", r.certificate.prob_omega2);
  auto flag = [&](std::string_view key, bool v) {
    out << key << " = " << (v ? "true" : "false") << '\n';
  };
  flag("alpha_ratio_ok", r.constraints.alpha_ratio_ok);
  flag("omega_min_positive", r.constraints.omega_min_positive);
  flag("b_exceeds_a", r.constraints.b_exceeds_a);
  flag("lengths_in_range", r.constraints.lengths_in_range);
}

}  // namespace pinchsec
