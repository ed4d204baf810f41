#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpsrk/errors.hpp"
#include "dpsrk/link.hpp"

namespace dpsrk {
namespace {

LinkScenario fig3_si(double km) {
  LinkScenario s;
  s.mu = 0.2;
  s.alpha_db_per_km = 0.21;
  s.length_km = km;
  s.clock_hz = 1e9;
  s.baseline_error = 0.01;
  s.detector = {"Si-APD", 0.35, 3.5e-8, 45e-9, 2.1, GatingMode::nongated};
  s.delay_n = 10;
  return s;
}

TEST(PSignal, Examples) {
  LinkScenario s = fig3_si(0.0);
  s.detector.efficiency = 1.0;
  s.detector.receiver_loss_db = 0.0;
  EXPECT_EQ(p_signal(s).value, 0.2);
  EXPECT_FALSE(p_signal(s).clamped);

  EXPECT_NEAR(p_signal(fig3_si(100)).value, 3.4284517355791234e-4, 1e-18);

  LinkScenario lossy = fig3_si(100);
  lossy.alpha_db_per_km = 1e4;
  EXPECT_EQ(p_signal(lossy).value, 0.0);
}

TEST(PSignal, ClampsAboveOne) {
  LinkScenario s = fig3_si(0.0);
  s.mu = 5.0;
  s.detector.efficiency = 1.0;
  s.detector.receiver_loss_db = 0.0;
  const Probability p = p_signal(s);
  EXPECT_EQ(p.value, 1.0);
  EXPECT_TRUE(p.clamped);
}

TEST(PDark, Examples) {
  EXPECT_DOUBLE_EQ(p_dark(fig3_si(0)), 7e-8);
  LinkScenario s = fig3_si(0);
  s.detector.dark_per_window = 0.0;
  EXPECT_EQ(p_dark(s), 0.0);
  s.detector.dark_per_window = 9.2e-6;
  EXPECT_DOUBLE_EQ(p_dark(s), 1.84e-5);
  s.n_detectors = 3;
  s.detector.dark_per_window = 0.4;
  EXPECT_THROW(p_dark(s), ModelRangeError);
}

TEST(PClick, SumAndClamp) {
  const LinkScenario s = fig3_si(100);
  EXPECT_EQ(p_click(s).value, p_signal(s).value + p_dark(s));
  EXPECT_NEAR(p_click(s).value, 3.4291517355791234e-4, 1e-18);

  LinkScenario zero = fig3_si(0);
  zero.detector.efficiency = 0.0;
  zero.detector.dark_per_window = 0.0;
  EXPECT_EQ(p_click(zero).value, 0.0);

  LinkScenario big = fig3_si(0);
  big.mu = 0.9;
  big.detector.efficiency = 1.0;
  big.detector.receiver_loss_db = 0.0;
  big.detector.dark_per_window = 0.1;
  const Probability c = p_click(big);
  EXPECT_EQ(c.value, 1.0);
  EXPECT_TRUE(c.clamped);
}

TEST(Qber, Examples) {
  LinkScenario dark_only = fig3_si(0);
  dark_only.detector.efficiency = 0.0;
  EXPECT_EQ(qber(dark_only), 0.5);

  LinkScenario no_dark = fig3_si(50);
  no_dark.detector.dark_per_window = 0.0;
  EXPECT_DOUBLE_EQ(qber(no_dark), 0.01);

  // mpmath, 40 digits.
  EXPECT_NEAR(qber(fig3_si(200)), 0.022279312407297250, 1e-15);

  LinkScenario none = fig3_si(0);
  none.detector.efficiency = 0.0;
  none.detector.dark_per_window = 0.0;
  EXPECT_THROW(qber(none), ModelRangeError);
}

TEST(LinkProperties, MonotoneInLengthAndBounded) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> km(0.0, 400.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = km(rng);
    const double b = a + 0.5;
    const LinkScenario sa = fig3_si(a);
    const LinkScenario sb = fig3_si(b);
    ASSERT_GT(p_signal(sa).value, p_signal(sb).value);
    ASSERT_LE(qber(sa), qber(sb));
    ASSERT_GE(qber(sa), 0.01);
    ASSERT_LE(qber(sa), 0.5);
  }
}

TEST(LinkProperties, LimitsOfQber) {
  EXPECT_NEAR(qber(fig3_si(2000)), 0.5, 1e-9);
  LinkScenario s = fig3_si(150);
  s.detector.dark_per_window = 1e-30;
  EXPECT_NEAR(qber(s), 0.01, 1e-12);
}

TEST(LinkProperties, ScaleLaw) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> km(0.0, 200.0);
  for (int i = 0; i < 1000; ++i) {
    const double l1 = km(rng);
    const double l2 = km(rng);
    const double joined = p_signal(fig3_si(l1 + l2)).value;
    const double split = p_signal(fig3_si(l1)).value * std::pow(10.0, -0.21 * l2 / 10.0);
    ASSERT_NEAR(joined / split, 1.0, 1e-12);
  }
}

TEST(LinkScenario, Validation) {
  EXPECT_NO_THROW(fig3_si(10).validate());
  auto s = fig3_si(10);
  s.mu = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = fig3_si(10);
  s.baseline_error = 0.5;
  EXPECT_THROW(s.validate(), DomainError);
  s = fig3_si(10);
  s.delay_n = 0;
  EXPECT_THROW(s.validate(), DomainError);
  s = fig3_si(10);
  s.clock_hz = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = fig3_si(-1);
  EXPECT_THROW(s.validate(), DomainError);
}

}  // namespace
}  // namespace dpsrk
