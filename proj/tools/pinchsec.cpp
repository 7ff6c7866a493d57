// pinchsec: secrecy outage analysis for a two-user pinching-antenna NOMA
// downlink.
//
//   pinchsec sop      [--config PATH] [--set key=value]... [--rho-t-db X]
//   pinchsec sweep    --axis NAME START STOP STEP [--modes a,b,...]
//   pinchsec optimize [--landscape PATH]
//   pinchsec table1
//   pinchsec mc       [--seed N] [--samples N] [--fixed-antenna]
//   pinchsec fig8     [--l2 X]
//
// All subcommands accept --config, --set, --rho-t-db, the length flags and
// --out. PINCHSEC_THREADS caps the Monte Carlo worker count.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pinchsec/pinchsec.hpp"

namespace {

using namespace pinchsec;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

bool given(double v) { return !std::isnan(v); }

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  // NaN means "not given on the command line".
  double rho_t_db = kUnset;

  std::string model = "flexible";
  double l1 = 1e-3;
  double l2 = kUnset;
  double eps = 0.5;
  double shared_length = kUnset;

  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  std::uint32_t chunks = 64;
  std::string out;

  std::vector<std::string> axis;
  std::string modes = "closed_form";
  std::string landscape;
  bool fixed_antenna = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_path, "Config file (dotted keys)");
  app->add_option("--set", o.sets, "Override a config key: key=value");
  app->add_option("--rho-t-db", o.rho_t_db, "Transmit SNR axis value (dB)");
  app->add_option("--model", o.model,
                  "Power model: flexible | equal | proportional")
      ->check(CLI::IsMember({"flexible", "equal", "proportional"}));
  app->add_option("--l1", o.l1, "PA-1 coupling length (m), flexible model");
  app->add_option("--l2", o.l2,
                  "PA-2 coupling length (m); default pi/(2 kappa)");
  app->add_option("--eps", o.eps, "Common power fraction, equal model");
  app->add_option(
      "--shared-length", o.shared_length,
      "Shared coupling length (m), proportional model; default pi/(4 kappa)");
  app->add_option("--seed", o.seed, "Monte Carlo seed");
  app->add_option("--samples", o.samples, "Monte Carlo samples")
      ->check(CLI::PositiveNumber);
  app->add_option("--chunks", o.chunks, "Monte Carlo work chunks")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "Output file (default stdout)");
}

SystemConfig build_config(const Options& o) {
  SystemConfig config =
      o.config_path.empty() ? default_config() : load_config(o.config_path);
  for (const auto& s : o.sets) apply_assignment(config, s);
  if (given(o.rho_t_db)) config.link.rho_t_db = o.rho_t_db;

  const auto report = validate(config);
  for (const auto& issue : report.issues) {
    if (issue.severity == Severity::kWarning) {
      std::cerr << "warning: " << issue.code << ": " << issue.message << '\n';
    }
  }
  if (!report.ok()) throw ConfigError(report);
  return config;
}

CouplingLengths build_lengths(const Options& o, const SystemConfig& config) {
  const auto& c = config.constants;
  if (o.model == "equal") return lengths_for_model(EqualPower{o.eps}, c);
  if (o.model == "proportional") {
    const double shared = given(o.shared_length)
                              ? o.shared_length
                              : c.max_coupling_length_m() / 2.0;
    return lengths_for_model(ProportionalPower{shared}, c);
  }
  const CouplingLengths lengths{
      o.l1, given(o.l2) ? o.l2 : c.max_coupling_length_m()};
  if (!lengths_admissible(lengths, c.coupling_coefficient_per_m)) {
    throw SweepError("l1/l2", "coupling lengths must lie in (0, pi/(2 kappa)]");
  }
  return lengths;
}

McSettings mc_settings(const Options& o) {
  return {o.samples, o.seed, o.chunks};
}

// Runs `body` against the --out file or stdout.
template <typename Body>
void with_output(const Options& o, Body&& body) {
  if (o.out.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw std::runtime_error("cannot write '" + o.out + "'");
  body(file);
}

void run_sop(const Options& o) {
  const auto config = build_config(o);
  const auto lengths = build_lengths(o, config);
  with_output(o, [&](std::ostream& out) {
    write_sop_report(out, config, lengths);
  });
}

void run_sweep_cmd(const Options& o) {
  if (o.axis.size() != 4) {
    throw SweepError("axis", "--axis expects NAME START STOP STEP");
  }
  SweepSpec spec;
  spec.axis = parse_axis(o.axis[0]);
  try {
    spec.start = std::stod(o.axis[1]);
    spec.stop = std::stod(o.axis[2]);
    spec.step = std::stod(o.axis[3]);
  } catch (const std::exception&) {
    throw SweepError("axis", "--axis START STOP STEP must be numbers");
  }
  spec.modes = parse_modes(o.modes);
  spec.validate();

  const auto config = build_config(o);
  const auto lengths = build_lengths(o, config);
  const auto rows = run_sweep(config, lengths, spec, mc_settings(o));
  with_output(o, [&](std::ostream& out) { write_csv(out, rows); });
}

void run_optimize(const Options& o) {
  const auto config = build_config(o);
  const auto result = solve_p1(config);
  with_output(o, [&](std::ostream& out) {
    write_optimizer_report(out, config, result);
  });
  if (!o.landscape.empty()) {
    std::ofstream file(o.landscape);
    if (!file) throw std::runtime_error("cannot write '" + o.landscape + "'");
    write_csv(file, l1_landscape(config, result.l2.value));
  }
}

void run_table1(const Options& o) {
  const auto config = build_config(o);
  const auto rows = table1(config);
  with_output(o, [&](std::ostream& out) { write_table1(out, rows); });
}

void run_mc(const Options& o) {
  const auto config = build_config(o);
  const auto settings = mc_settings(o);
  with_output(o, [&](std::ostream& out) {
    auto kv = [&](const char* key, double v) {
      out << key << " = " << format_number(v) << '\n';
    };
    out << "seed = " << settings.seed << '\n';
    out << "samples = " << settings.samples << '\n';
    kv("rho_t_db", config.link.rho_t_db);
    if (o.fixed_antenna) {
      const auto est = estimate_sop_fixed_antenna(config, settings);
      out << "system = fixed_antenna\n";
      kv("sop_mc", est.sop_hat);
      kv("mc_stderr", est.std_err);
      return;
    }
    const auto lengths = build_lengths(o, config);
    const auto est = estimate_sop(config, lengths, settings);
    out << "system = pinching\n";
    kv("l1", lengths.l1);
    kv("l2", lengths.l2);
    kv("sop_mc", est.sop_hat);
    kv("mc_stderr", est.std_err);
    kv("sop_cf", sop_closed_form(config, lengths).sop);
  });
}

void run_fig8(const Options& o) {
  const auto config = build_config(o);
  const double l2 =
      given(o.l2) ? o.l2 : config.constants.max_coupling_length_m();
  const auto rows = l1_landscape(config, l2);
  with_output(o, [&](std::ostream& out) { write_csv(out, rows); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy outage analysis for pinching-antenna NOMA"};
  app.require_subcommand(1);

  Options o;
  auto* sop = app.add_subcommand("sop", "Closed-form SOP at one point");
  auto* sweep = app.add_subcommand("sweep", "CSV sweep along one axis");
  auto* optimize = app.add_subcommand("optimize", "Minimum-SOP coupling lengths");
  auto* table = app.add_subcommand("table1",
                                   "Optimal l1, theory vs grid, 17-23 dB");
  auto* mc = app.add_subcommand("mc", "Monte Carlo SOP estimate");
  auto* fig8 = app.add_subcommand("fig8", "SOP versus l1 landscape CSV");
  for (auto* sub : {sop, sweep, optimize, table, mc, fig8}) add_common(sub, o);

  sweep->add_option("--axis", o.axis, "NAME START STOP STEP")
      ->expected(4)
      ->required();
  sweep->add_option("--modes", o.modes,
                    "closed_form,monte_carlo,fixed_antenna_mc,optimize");
  optimize->add_option("--landscape", o.landscape,
                       "Also write SOP vs l1 CSV at the optimal l2");
  mc->add_flag("--fixed-antenna", o.fixed_antenna,
               "Estimate the single fixed-antenna benchmark instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sop->parsed()) run_sop(o);
    if (sweep->parsed()) run_sweep_cmd(o);
    if (optimize->parsed()) run_optimize(o);
    if (table->parsed()) run_table1(o);
    if (mc->parsed()) run_mc(o);
    if (fig8->parsed()) run_fig8(o);
  } catch (const ConfigParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const SweepError& e) {
    std::cerr << "error: " << e.field() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
