#include <gtest/gtest.h>

#include "test_support.hpp"

namespace pinchsec {
namespace {

using testing::Gen;

const NomaAllocation kAlloc{0.99, 0.01};

TEST(Sinr, UnitProducts) {
  const auto s = compute_sinrs(kAlloc, 100.0, 100.0, 1.0, 1.0);
  EXPECT_NEAR(s.u1_decodes_s1, 49.5, 1e-12);
  EXPECT_NEAR(s.u1_decodes_s2, 1.0, 1e-12);
  EXPECT_NEAR(s.u2_decodes_s1, 49.5, 1e-12);
  EXPECT_NEAR(s.u2_decodes_s2, 1.0, 1e-12);
}

TEST(Sinr, ZeroGain) {
  const auto s = compute_sinrs(kAlloc, 100.0, 100.0, 0.0, 2.0);
  EXPECT_EQ(s.u1_decodes_s1, 0.0);
  EXPECT_EQ(s.u1_decodes_s2, 0.0);
  EXPECT_GT(s.u2_decodes_s1, 0.0);
}

TEST(Sinr, InterferenceCeiling) {
  const auto s = compute_sinrs(kAlloc, 1e15, 1e15, 1.0, 1.0);
  EXPECT_NEAR(s.u1_decodes_s1, 99.0, 1e-9);
  EXPECT_LT(s.u1_decodes_s1, 99.0);
}

TEST(Sinr, RejectsNegativeInputs) {
  EXPECT_THROW(compute_sinrs(kAlloc, -1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(compute_sinrs(kAlloc, 1.0, 1.0, 1.0, -1.0), std::invalid_argument);
}

TEST(Sinr, MonotoneBoundedAndLinearProperty) {
  Gen gen(51);
  for (int i = 0; i < 10000; ++i) {
    const double a2 = gen.uniform(0.001, 0.5);
    const NomaAllocation alloc{1.0 - a2, a2};
    const double rho = gen.log_uniform(1e-3, 1e12);
    const double g = gen.log_uniform(1e-12, 1.0);
    const double k = gen.uniform(1.001, 10.0);
    const auto s = compute_sinrs(alloc, rho, rho, g, g);
    const auto t = compute_sinrs(alloc, rho * k, rho, g, g);
    EXPECT_GE(t.u1_decodes_s1, s.u1_decodes_s1);
    EXPECT_LT(s.u1_decodes_s1, alloc.alpha1 / alloc.alpha2);
    EXPECT_NEAR(t.u1_decodes_s2, k * s.u1_decodes_s2, 1e-12 * t.u1_decodes_s2);
    EXPECT_EQ(t.u2_decodes_s1, s.u2_decodes_s1);
  }
}

TEST(Sinr, UserSwapSymmetryProperty) {
  Gen gen(52);
  for (int i = 0; i < 10000; ++i) {
    const double a2 = gen.uniform(0.001, 0.5);
    const NomaAllocation alloc{1.0 - a2, a2};
    const double r1 = gen.log_uniform(1e-3, 1e12), r2 = gen.log_uniform(1e-3, 1e12);
    const double g1 = gen.log_uniform(1e-12, 1.0), g2 = gen.log_uniform(1e-12, 1.0);
    const auto s = compute_sinrs(alloc, r1, r2, g1, g2);
    const auto t = compute_sinrs(alloc, r2, r1, g2, g1);
    EXPECT_EQ(s.u1_decodes_s1, t.u2_decodes_s1);
    EXPECT_EQ(s.u1_decodes_s2, t.u2_decodes_s2);
    EXPECT_EQ(s.u2_decodes_s1, t.u1_decodes_s1);
    EXPECT_EQ(s.u2_decodes_s2, t.u1_decodes_s2);
  }
}

}  // namespace
}  // namespace pinchsec
