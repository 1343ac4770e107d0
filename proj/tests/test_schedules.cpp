#include "issprobe/errors.hpp"
#include "issprobe/schedules.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace issprobe;

TEST(Cumulative, Products) {
  EXPECT_NEAR(DiscountSchedule::constant(0.8).cumulative(3), 0.512, 1e-15);
  EXPECT_EQ(DiscountSchedule::constant(0.3).cumulative(0), 1.0);
  EXPECT_EQ(DiscountSchedule::finite_horizon(5).cumulative(5), 1.0);
  EXPECT_EQ(DiscountSchedule::finite_horizon(5).cumulative(6), 0.0);
  const auto e = DiscountSchedule::explicit_list({2.0, 0.5}, 0.5);
  EXPECT_EQ(e.cumulative(1), 2.0);
  EXPECT_EQ(e.cumulative(2), 1.0);
  EXPECT_EQ(e.cumulative(4), 0.25);
}

TEST(Mass, ClosedForms) {
  const auto c = mass(DiscountSchedule::constant(0.8), 1e-12);
  EXPECT_TRUE(c.proper);
  EXPECT_NEAR(c.l1, 5.0, 1e-12);
  EXPECT_LE(c.tail_mass, 1e-12);
  EXPECT_EQ(mass(DiscountSchedule::finite_horizon(0), 1e-12).l1, 1.0);
  EXPECT_EQ(mass(DiscountSchedule::finite_horizon(7), 1e-12).l1, 8.0);
  EXPECT_FALSE(mass(DiscountSchedule::constant(1.0), 1e-12).proper);
}

TEST(Mass, ExplicitSchedules) {
  const auto finite = mass(DiscountSchedule::explicit_list({2.0, 0.0}), 1e-12);
  EXPECT_TRUE(finite.proper);
  EXPECT_EQ(finite.l1, 3.0);
  const auto geo = mass(DiscountSchedule::explicit_list({1.0, 1.0}, 0.5), 1e-12);
  EXPECT_TRUE(geo.proper);
  EXPECT_NEAR(geo.l1, 3.0 + 1.0, 1e-12);  // 1 + 1 + 1 + (0.5 + 0.25 + ...)
  EXPECT_FALSE(mass(DiscountSchedule::explicit_list({0.9}, 1.0), 1e-12).proper);
  EXPECT_THROW(mass(DiscountSchedule::explicit_list(std::vector<double>(400, 10.0)), 1e-12), Divergent);
}

TEST(Distribution, Geometric) {
  const auto p = timestep_distribution(DiscountSchedule::constant(0.5));
  EXPECT_FALSE(p.truncated);
  EXPECT_NEAR(p.at(0), 0.5, 1e-12);
  EXPECT_NEAR(p.at(3), 0.0625, 1e-12);
  double s = 0;
  for (double v : p.pmf) s += v;
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Distribution, Uniform) {
  const auto p = timestep_distribution(DiscountSchedule::finite_horizon(2));
  ASSERT_GE(p.pmf.size(), 3u);
  for (int t = 0; t < 3; ++t) EXPECT_NEAR(p.at(t), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(p.at(3), 0.0);
}

TEST(Distribution, ExplicitAboveOne) {
  const auto p = timestep_distribution(DiscountSchedule::explicit_list({2.0, 0.0}));
  EXPECT_NEAR(p.at(0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.at(1), 2.0 / 3.0, 1e-15);
}

TEST(Distribution, FixedRange) {
  const auto p = timestep_distribution(DiscountSchedule::explicit_list({0.0}), std::size_t{4});
  EXPECT_EQ(p.at(0), 1.0);
  EXPECT_EQ(p.at(1), 0.0);
}

TEST(Distribution, ImproperIsFlagged) {
  const auto p = timestep_distribution(DiscountSchedule::constant(1.0), 1e-12, MassOptions{1000, 1e300});
  EXPECT_TRUE(p.truncated);
}

TEST(Convolution, NestedGeometric) {
  const auto s = DiscountSchedule::constant(0.5);
  const auto p = convolve_kappa(s, [](std::size_t k) { return std::pow(0.5, k); }, 1.0, 80);
  EXPECT_NEAR(p.at(0), 0.5, 1e-12);
  EXPECT_NEAR(p.at(2), 0.125, 1e-12);
  // Σ_t 0.5^t (4/3) = 8/3, below ‖κ‖₁ ‖λ̄‖₁ = 4.
  EXPECT_NEAR(p.total_mass, 8.0 / 3.0, 1e-12);
  EXPECT_LE(p.total_mass, 4.0 + 1e-12);
}

TEST(Convolution, SingleTerm) {
  const auto p = convolve_kappa(DiscountSchedule::finite_horizon(0), [](std::size_t k) { return k ? 0.3 : 1.0; },
                                0.5, 10);
  EXPECT_NEAR(p.at(0), 1.0, 1e-15);
}

TEST(Convolution, DiagonalizationBoundAcrossSchedules) {
  const DecayFn kappas[] = {[](std::size_t k) { return std::pow(0.5, k); },
                            [](std::size_t k) { return 1.0 / (1.0 + k * k); },
                            [](std::size_t k) { return k < 3 ? 1.0 : 0.0; }};
  const DiscountSchedule scheds[] = {DiscountSchedule::constant(0.5), DiscountSchedule::constant(0.9),
                                     DiscountSchedule::finite_horizon(6),
                                     DiscountSchedule::explicit_list({1.5, 0.8, 0.5}, 0.7)};
  for (const auto& s : scheds) {
    const auto m = mass(s, 1e-12);
    for (const auto& k : kappas) {
      for (double alpha : {0.5, 1.0}) {
        double kl1 = 0;
        for (std::size_t t = 0; t < 200000; ++t) kl1 += std::pow(k(t), alpha);
        const auto p = convolve_kappa(s, k, alpha, 400);
        EXPECT_LE(p.total_mass, kl1 * m.l1 + 1e-12);
      }
    }
  }
}

TEST(Shift, KindsAndConsistency) {
  EXPECT_EQ(shift(DiscountSchedule::finite_horizon(5), 2), DiscountSchedule::finite_horizon(3));
  EXPECT_EQ(shift(DiscountSchedule::constant(0.8), 7), DiscountSchedule::constant(0.8));
  const auto e = DiscountSchedule::explicit_list({1.2, 0.9, 0.5, 0.7}, 0.6);
  EXPECT_EQ(shift(e, 0), e);
  for (std::size_t t = 0; t < 6; ++t) {
    const auto s = shift(e, t);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_NEAR(s.cumulative(k) * e.cumulative(t), e.cumulative(t + k), 1e-12 * e.cumulative(t + k));
    }
  }
  const auto c = DiscountSchedule::constant(0.8);
  EXPECT_NEAR(shift(c, 3).cumulative(2) * c.cumulative(3), c.cumulative(5), 1e-15);
}

TEST(Truncate, DropsTail) {
  const auto t = truncate(DiscountSchedule::constant(0.5), 3);
  EXPECT_EQ(t.cumulative(3), 0.125);
  EXPECT_EQ(t.cumulative(4), 0.0);
  EXPECT_EQ(*t.support_end(), 3u);
}

TEST(Parse, Specs) {
  EXPECT_EQ(parse_schedule("constant:0.8"), DiscountSchedule::constant(0.8));
  EXPECT_EQ(parse_schedule("horizon:16"), DiscountSchedule::finite_horizon(16));
  EXPECT_THROW(parse_schedule("constant:abc"), ConfigError);
  EXPECT_THROW(parse_schedule("weird:1"), ConfigError);
  const auto list = split_schedule_list("constant:0.5,constant:0.9,horizon:16");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[2], "horizon:16");
}

TEST(Parse, ExplicitFile) {
  const std::string path = testing::TempDir() + "/sched.csv";
  {
    std::ofstream f(path);
    f << "# lambdas\n0.9\n0.8\ntail_ratio=0.5\n";
  }
  const auto s = parse_schedule("explicit:@" + path);
  EXPECT_EQ(s.lambda_at(1), 0.9);
  EXPECT_EQ(s.lambda_at(2), 0.8);
  EXPECT_EQ(s.lambda_at(5), 0.5);
  {
    std::ofstream f(path);
    f << "0.9\nnot-a-number\n";
  }
  try {
    parse_schedule("explicit:@" + path);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
  std::remove(path.c_str());
}

TEST(Monotonicity, Reported) {
  EXPECT_TRUE(DiscountSchedule::constant(0.9).nonincreasing(100));
  EXPECT_TRUE(DiscountSchedule::explicit_list({1.0, 0.9, 0.9}, 0.5).nonincreasing(10));
  EXPECT_FALSE(DiscountSchedule::explicit_list({0.5, 0.9}).nonincreasing(10));
}
