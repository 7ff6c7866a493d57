#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace pinchsec {
namespace {

double max_len() { return default_config().constants.max_coupling_length_m(); }

SystemConfig at_db(double rho_t_db) {
  auto c = default_config();
  c.link.rho_t_db = rho_t_db;
  return c;
}

SweepSpec rho_spec(const char* modes) {
  SweepSpec spec;
  spec.axis = SweepAxis::kRhoTDb;
  spec.start = 15.0;
  spec.stop = 40.0;
  spec.step = 1.0;
  spec.modes = parse_modes(modes);
  return spec;
}

std::string error_field(const SweepSpec& spec) {
  try {
    spec.validate();
  } catch (const SweepError& e) {
    return e.field();
  }
  return "";
}

TEST(SweepSpec, Points) {
  const auto pts = rho_spec("closed_form").points();
  ASSERT_EQ(pts.size(), 26u);
  EXPECT_EQ(pts.front(), 15.0);
  EXPECT_EQ(pts.back(), 40.0);
  SweepSpec fine = rho_spec("closed_form");
  fine.start = 0.0;
  fine.stop = 1.0;
  fine.step = 0.1;
  EXPECT_EQ(fine.points().size(), 11u);
}

TEST(SweepSpec, Validation) {
  auto spec = rho_spec("closed_form");
  spec.stop = spec.start;
  EXPECT_EQ(error_field(spec), "start");
  spec = rho_spec("closed_form");
  spec.step = 0.0;
  EXPECT_EQ(error_field(spec), "step");
  spec = rho_spec("closed_form");
  spec.modes = {};
  EXPECT_EQ(error_field(spec), "modes");
  spec = rho_spec("optimize");
  spec.axis = SweepAxis::kL1;
  EXPECT_EQ(error_field(spec), "modes");
  EXPECT_EQ(error_field(rho_spec("closed_form,monte_carlo")), "");
}

TEST(SweepSpec, Parsing) {
  EXPECT_EQ(parse_axis("cell_side_c2"), SweepAxis::kCellSideC2);
  EXPECT_EQ(to_string(SweepAxis::kAlpha2), "alpha2");
  EXPECT_THROW(parse_axis("rho"), SweepError);
  const auto m = parse_modes("monte_carlo,optimize");
  EXPECT_TRUE(m.monte_carlo && m.optimize);
  EXPECT_FALSE(m.closed_form || m.fixed_antenna_mc);
  try {
    parse_modes("closed_form,fast");
    FAIL();
  } catch (const SweepError& e) {
    EXPECT_EQ(e.field(), "modes");
  }
}

TEST(Csv, HeaderAndFormatting) {
  EXPECT_EQ(kCsvHeader,
            "axis_value,l1,l2,eps1,eps2,omega1,omega2,omega3,omega4,"
            "prob_omega1,prob_omega2,sop_cf,sop_mc,mc_stderr,sop_fixed_mc,"
            "case_tag");
  EXPECT_EQ(format_number(0.0), "0.00000000e+00");
  EXPECT_EQ(format_number(-7.195950431), "-7.19595043e+00");
  EXPECT_EQ(format_number(1.0 / 3.0), "3.33333333e-01");
  CsvRow row;
  row.axis_value = 20.0;
  row.l1 = 1e-3;
  row.case_tag = "Case2";
  EXPECT_EQ(format_csv_row(row),
            "2.00000000e+01,1.00000000e-03,,,,,,,,,,,,,,Case2");
}

TEST(Sweep, ClosedFormRows) {
  const auto rows = run_sweep(at_db(20.0), {M_PI / 1400.0, max_len()},
                              rho_spec("closed_form"), {});
  ASSERT_EQ(rows.size(), 26u);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.sop_cf.has_value());
    EXPECT_FALSE(row.sop_mc.has_value());
    EXPECT_FALSE(row.case_tag.has_value());
    if (row.axis_value >= 22.0 && row.axis_value <= 28.0) {
      EXPECT_EQ(*row.sop_cf, 0.0) << row.axis_value;
    }
  }
  EXPECT_GT(*rows[29 - 15].sop_cf, 0.0);
}

TEST(Sweep, MonteCarloColumnsPresent) {
  auto spec = rho_spec("closed_form,monte_carlo,fixed_antenna_mc");
  spec.stop = 20.0;
  const auto rows = run_sweep(at_db(20.0), {M_PI / 1400.0, max_len()}, spec,
                              {50000, 1, 4});
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.sop_mc && row.mc_stderr && row.sop_fixed_mc);
    EXPECT_LE(std::abs(*row.sop_mc - *row.sop_cf),
              std::max(4.0 * *row.mc_stderr, 1e-3));
  }
}

TEST(Sweep, OptimizeModeTagsRows) {
  auto spec = rho_spec("optimize");
  spec.start = 17.0;
  spec.stop = 23.0;
  const auto rows = run_sweep(default_config(), {1e-3, max_len()}, spec, {});
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(*rows.front().case_tag, "Case2");
  EXPECT_EQ(*rows.back().case_tag, "Case1");
  EXPECT_EQ(*rows.back().sop_cf, 0.0);
}

TEST(Sweep, OtherAxes) {
  SweepSpec spec;
  spec.modes = parse_modes("closed_form");
  spec.axis = SweepAxis::kCellSideC1;
  spec.start = 4.0;
  spec.stop = 12.0;
  spec.step = 4.0;
  auto rows = run_sweep(at_db(20.0), {8e-4, max_len()}, spec, {});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(*rows[0].prob_omega1, 1.0);  // small cell: U1 always fine

  spec.axis = SweepAxis::kAlpha2;
  spec.start = 0.01;
  spec.stop = 0.1;
  spec.step = 0.09;
  rows = run_sweep(at_db(20.0), {8e-4, max_len()}, spec, {});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(*rows[1].sop_cf, 1.0);  // alpha1 / alpha2 = 9 < gamma1

  spec.axis = SweepAxis::kL1;
  spec.start = 1e-3;
  spec.stop = 2e-2;
  spec.step = 1e-3;
  EXPECT_THROW(run_sweep(at_db(20.0), {8e-4, max_len()}, spec, {}), SweepError);
}

TEST(Landscape, ArgminAt20dB) {
  const auto rows = l1_landscape(at_db(20.0), max_len());
  double best = 2.0, arg = 0.0;
  for (const auto& row : rows) {
    if (*row.sop_cf < best) {
      best = *row.sop_cf;
      arg = *row.l1;
    }
  }
  EXPECT_LE(std::abs(arg - 7.25e-4), 1e-5 + 1e-12);
  EXPECT_EQ(*rows.back().l1, max_len());
  EXPECT_EQ(*rows.back().sop_cf, 1.0);
}

TEST(Landscape, ContiguousPlateauAt22dB) {
  const auto rows = l1_landscape(at_db(22.0), max_len());
  std::size_t first = rows.size(), last = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (*rows[i].sop_cf == 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  ASSERT_LT(first, rows.size());
  for (std::size_t i = first; i <= last; ++i) EXPECT_EQ(*rows[i].sop_cf, 0.0);
  EXPECT_LE(*rows[first].l1, 5.77e-4 + 1e-5);
  EXPECT_GE(*rows[last].l1, 2.61e-3);
  // Every grid point strictly inside the analytic interval is on the plateau.
  const auto region = case1_region(at_db(22.0));
  for (const auto& row : rows) {
    if (region->l1.contains(*row.l1)) {
      EXPECT_EQ(*row.sop_cf, 0.0);
    }
  }
}

TEST(Table1, Rows) {
  const auto rows = table1(default_config());
  ASSERT_EQ(rows.size(), 7u);
  const auto& r23 = rows.back();
  EXPECT_EQ(r23.rho_t_db, 23.0);
  EXPECT_EQ(r23.case_tag, CaseTag::kCase1);
  EXPECT_NEAR(r23.l1_theory.lower, 5.13e-4, 0.01 * 5.13e-4);
  EXPECT_EQ(r23.min_sop, 0.0);
  // Simulated column at 0.1 mm steps.
  EXPECT_NEAR(rows[0].l1_sim.lower, 1.1e-3, 1e-12);
  EXPECT_NEAR(rows[3].l1_sim.lower, 8e-4, 1e-12);
  EXPECT_NEAR(r23.l1_sim.lower, 6e-4, 1e-12);
  EXPECT_NEAR(r23.l1_sim.upper, 4.5e-3, 1e-12);

  std::ostringstream out;
  write_table1(out, rows);
  const auto text = out.str();
  EXPECT_EQ(text.rfind(std::string(kTable1Header) + "\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
}

TEST(Reports, SopReportKeys) {
  std::ostringstream out;
  write_sop_report(out, at_db(22.0), {M_PI / 1400.0, max_len()});
  const auto text = out.str();
  for (const char* key : {"sop_cf = 0.00000000e+00", "branch1 = full",
                          "omega4 = ", "onset_rho_t_db = "}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace pinchsec
