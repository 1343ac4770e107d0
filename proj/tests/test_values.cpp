#include "issprobe/errors.hpp"
#include "issprobe/rng.hpp"
#include "issprobe/values.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace issprobe;

namespace {
Vec s1(double a) { return Vec::Constant(1, a); }

ValueQuery linear_query(const DiscountSchedule& sched) {
  return ValueQuery{make_scalar_linear(0.5), Policy::zero(1), make_linear_reward(Vec::Ones(1)), sched};
}
}  // namespace

TEST(Value, GeometricSeries) {
  const auto r = value(linear_query(DiscountSchedule::constant(0.8)), s1(1.0));
  EXPECT_NEAR(r.value, 1.0 / 0.6, 1e-9);
  EXPECT_LE(r.tail_bound, 1e-9);
  EXPECT_EQ(r.term_count, r.truncation_T + 1);
}

TEST(Value, NegationCancels) {
  const ClosedLoop n = make_negation_system();
  ValueQuery q{n.system, n.policy, make_linear_reward(Vec::Ones(1)), DiscountSchedule::finite_horizon(5)};
  q.keep_terms = true;
  const auto r = value(q, s1(1.0));
  EXPECT_EQ(r.term_count, 6u);
  EXPECT_EQ(r.value, 0.0);
  const double expected[] = {1, -1, 1, -1, 1, -1};
  for (int t = 0; t < 6; ++t) EXPECT_EQ(r.terms[t], expected[t]);
}

TEST(Value, ZeroRewardIsExactlyZero) {
  ValueQuery q{make_piecewise_rotation(0.9, 0.5), Policy::zero(2), make_zero_reward(), DiscountSchedule::constant(0.9)};
  EXPECT_EQ(value(q, Vec::Constant(2, 0.3)).value, 0.0);
}

TEST(Value, ImproperScheduleThrows) {
  EXPECT_THROW(value(linear_query(DiscountSchedule::constant(1.0)), s1(1.0)), ImproperSchedule);
}

TEST(QValue, ClosedForm) {
  const auto q = linear_query(DiscountSchedule::constant(0.8));
  EXPECT_NEAR(q_value(q, s1(1.0), s1(0.2)).value, 1.0 + 0.8 * 0.7 / 0.6, 1e-9);
}

TEST(QValue, PolicyActionReproducesValue) {
  Rng rng(2);
  const Policy pol = Policy::linear(Mat::Constant(1, 1, -0.2));
  for (const auto& sched : {DiscountSchedule::constant(0.8), DiscountSchedule::finite_horizon(4),
                            DiscountSchedule::explicit_list({1.3, 0.7}, 0.5)}) {
    ValueQuery q{make_scalar_linear(0.5), pol, make_linear_reward(Vec::Ones(1)), sched};
    for (int k = 0; k < 10; ++k) {
      const Vec x = s1(rng.uniform(-3, 3));
      EXPECT_EQ(q_value(q, x, pol.act(x)).value, value(q, x).value);
    }
  }
}

TEST(QValue, HorizonZeroIsImmediateReward) {
  const auto q = linear_query(DiscountSchedule::finite_horizon(0));
  EXPECT_EQ(q_value(q, s1(1.5), s1(9.0)).value, 1.5);
}

TEST(Bellman, ShiftedScheduleConsistency) {
  const System sys = make_scalar_linear(-0.7);
  const Policy pol = Policy::linear(Mat::Constant(1, 1, 0.3));
  const Reward r = make_signed_power_reward(Vec::Ones(1), 1.0, 0.5);
  for (const auto& sched : {DiscountSchedule::constant(0.6), DiscountSchedule::finite_horizon(7),
                            DiscountSchedule::explicit_list({0.9, 0.4, 1.0}, 0.8)}) {
    ValueQuery q{sys, pol, r, sched};
    ValueQuery q1 = q;
    q1.start_time = 1;
    const Vec x = s1(0.8);
    const Vec u = pol.act(x);
    const double lhs = value(q, x).value;
    const double rhs = r(x, u) + sched.lambda_at(1) * value(q1, sys.step(x, u)).value;
    EXPECT_NEAR(lhs, rhs, 2 * q.eps);
  }
}

TEST(Batch, SerialMatchesParallel) {
  const auto q = linear_query(DiscountSchedule::constant(0.9));
  std::vector<Vec> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(s1(-2.0 + i * 0.0625));
  const auto a = value_batch(q, xs, Exec::serial);
  const auto b = value_batch(q, xs, Exec::parallel);
  EXPECT_EQ(a, b);
}

TEST(PerformanceDifference, IdenticalPolicies) {
  const auto pd = performance_difference(make_scalar_linear(0.5), Policy::zero(1), Policy::zero(1),
                                         make_linear_reward(Vec::Ones(1)), DiscountSchedule::constant(0.8), s1(1.0));
  EXPECT_EQ(pd.lhs, 0.0);
  for (double t : pd.terms) EXPECT_EQ(t, 0.0);
}

TEST(PerformanceDifference, ConstantOffsetAgainstBruteForce) {
  const System sys = make_scalar_linear(0.5);
  const Policy pi = Policy::zero(1), pip = Policy::constant(s1(0.1));
  const Reward r = make_linear_reward(Vec::Ones(1));
  const auto sched = DiscountSchedule::constant(0.8);
  const auto pd = performance_difference(sys, pi, pip, r, sched, s1(1.0));
  // Brute force: both trajectories summed long enough for 0.8^t to vanish.
  double vp = 0, vb = 0, xp = 1, xb = 1, w = 1;
  for (int t = 0; t < 400; ++t) {
    vp += w * xp;
    vb += w * xb;
    xp = 0.5 * xp + 0.1;
    xb = 0.5 * xb;
    w *= 0.8;
  }
  EXPECT_NEAR(pd.lhs, vp - vb, 1e-8);
  EXPECT_LE(std::abs(pd.residual), 2 * kDefaultValueEps);
  EXPECT_NEAR(pd.decomposition_sum, pd.lhs, 2 * kDefaultValueEps);
}

TEST(PerformanceDifference, SingleStepOverride) {
  const System sys = make_scalar_linear(0.5);
  const Policy pi = Policy::zero(1);
  const Policy pip = Policy::override_at(pi, 0, [](const Vec&) { return s1(0.3); });
  const auto pd =
      performance_difference(sys, pi, pip, make_linear_reward(Vec::Ones(1)), DiscountSchedule::constant(0.8), s1(1.0));
  std::size_t nonzero = 0;
  for (double t : pd.terms) nonzero += t != 0.0;
  EXPECT_EQ(nonzero, 1u);
  EXPECT_NE(pd.terms[0], 0.0);
  EXPECT_LE(std::abs(pd.residual), 2 * kDefaultValueEps);
}

TEST(Truncation, Certified) {
  const auto tr = certify_truncation(linear_query(DiscountSchedule::constant(0.8)));
  EXPECT_GT(tr.T, 0u);
  EXPECT_LE(tr.tail_bound, kDefaultValueEps);
  EXPECT_THROW(certify_truncation(linear_query(DiscountSchedule::constant(1.0))), ImproperSchedule);
}
