#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace pinchsec {
namespace {

using testing::Gen;

void expect_same(const SystemConfig& a, const SystemConfig& b) {
  std::ostringstream sa, sb;
  write_config(sa, a);
  write_config(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(ConfigFile, EmptyInputGivesDefaults) {
  std::istringstream in("");
  expect_same(parse_config(in), default_config());
}

TEST(ConfigFile, CommentsBlankLinesAndWhitespace) {
  std::istringstream in(
      "# header\n"
      "\n"
      "   link.rho_t_db =  22   # trailing comment\n"
      "geometry.cell_side_m=8\n"
      "allocation.alpha1 = 0.95\r\n"
      "allocation.alpha2 = 5e-2\n");
  const auto config = parse_config(in);
  EXPECT_DOUBLE_EQ(config.link.rho_t_db, 22.0);
  EXPECT_DOUBLE_EQ(config.geometry.cell_side_m, 8.0);
  EXPECT_DOUBLE_EQ(config.allocation.alpha1, 0.95);
  EXPECT_DOUBLE_EQ(config.allocation.alpha2, 0.05);
  EXPECT_DOUBLE_EQ(config.geometry.waveguide_height_m, 3.0);
}

TEST(ConfigFile, PerCellSides) {
  std::istringstream in("geometry.cell1_side_m = 12\n");
  const auto config = parse_config(in);
  EXPECT_DOUBLE_EQ(config.geometry.side1(), 12.0);
  EXPECT_DOUBLE_EQ(config.geometry.side2(), 10.0);
}

TEST(ConfigFile, UnknownKeyNamesKeyAndLine) {
  std::istringstream in("link.rho_t_db = 20\ngeometry.cell_size = 3\n");
  try {
    parse_config(in);
    FAIL() << "expected ConfigParseError";
  } catch (const ConfigParseError& e) {
    EXPECT_EQ(e.key(), "geometry.cell_size");
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ConfigFile, BadValueNamesKey) {
  std::istringstream in("link.gamma1_db = ten\n");
  try {
    parse_config(in);
    FAIL() << "expected ConfigParseError";
  } catch (const ConfigParseError& e) {
    EXPECT_EQ(e.key(), "link.gamma1_db");
  }
  std::istringstream trailing("link.gamma1_db = 10dB\n");
  EXPECT_THROW(parse_config(trailing), ConfigParseError);
  std::istringstream empty("link.gamma1_db =\n");
  EXPECT_THROW(parse_config(empty), ConfigParseError);
}

TEST(ConfigFile, MissingEquals) {
  std::istringstream in("link.gamma1_db 10\n");
  EXPECT_THROW(parse_config(in), ConfigParseError);
}

TEST(ConfigFile, UnreadablePath) {
  EXPECT_THROW(load_config("/nonexistent/pinchsec.conf"), ConfigParseError);
}

TEST(ConfigFile, AssignmentOverride) {
  auto config = default_config();
  apply_assignment(config, "link.rho_t_db=31.5");
  EXPECT_DOUBLE_EQ(config.link.rho_t_db, 31.5);
  EXPECT_THROW(apply_assignment(config, "nope=1"), ConfigParseError);
}

TEST(ConfigFile, WriteParseRoundTripProperty) {
  Gen gen(21);
  for (int i = 0; i < 500; ++i) {
    const auto config = gen.config(gen.coin());
    std::stringstream buf;
    write_config(buf, config);
    const auto back = parse_config(buf);
    expect_same(config, back);
    EXPECT_EQ(back.link.rho_t_db, config.link.rho_t_db);
    EXPECT_EQ(back.geometry.side1(), config.geometry.side1());
    EXPECT_EQ(back.geometry.side2(), config.geometry.side2());
  }
}

}  // namespace
}  // namespace pinchsec
