#include "issprobe/dynamics.hpp"
#include "issprobe/errors.hpp"
#include "issprobe/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace issprobe;

namespace {
Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST(Rollout, HalvingMapWithoutPerturbation) {
  const System sys = make_scalar_linear(0.5);
  const auto pair = rollout(sys, Policy::zero(1), v1(1.0), PerturbationPlan::none(1), 3);
  const double expected[] = {1.0, 0.5, 0.25, 0.125};
  for (int t = 0; t <= 3; ++t) {
    EXPECT_EQ(pair.nominal[t].state[0], expected[t]);
    EXPECT_EQ(pair.deviations[t], 0.0);
  }
}

TEST(Rollout, NominalIgnoresPlanAndPerturbedUsesOffsets) {
  const System sys = make_scalar_linear(0.5);
  PerturbationPlan plan{v1(0.2), {v1(0.1), v1(-0.3)}};
  const auto pair = rollout(sys, Policy::zero(1), v1(1.0), plan, 4);
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(pair.nominal[t + 1].state, sys.step(pair.nominal[t].state, pair.nominal[t].input));
    EXPECT_EQ(pair.perturbed[t].input, plan.input_offset_at(t, 1));
    EXPECT_EQ(pair.deviations[t], distance(pair.perturbed[t].state, pair.nominal[t].state));
  }
  EXPECT_DOUBLE_EQ(pair.perturbed[1].state[0], 0.5 * 1.2 + 0.1);
}

TEST(Rollout, DomainEscapeReportsStep) {
  const System sys = make_scalar_linear(2.0);
  try {
    rollout(sys, Policy::zero(1), v1(1.0), PerturbationPlan::none(1), 10);
    FAIL();
  } catch (const DomainEscape& e) {
    EXPECT_EQ(e.step(), 4u);  // 1, 2, 4, 8, 16
  }
}

TEST(Rollout, LinearSuperpositionInStateOffset) {
  Mat A(2, 2);
  A << 0.5, 0.2, -0.1, 0.4;
  const System sys = make_linear_system(A, Box::cube(2, -10, 10));
  const Policy pol = Policy::linear(0.1 * Mat::Identity(2, 2));
  const Vec x0 = v2(0.3, -0.7), dir = v2(1.0, 2.0).normalized();
  std::vector<double> ratios;
  for (double m : {1e-3, 1e-2, 1e-1}) {
    const auto p = rollout(sys, pol, x0, PerturbationPlan::state(m * dir), 6);
    ratios.push_back(p.deviations[6] / m);
  }
  EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 1e-9);
  EXPECT_NEAR(ratios[2] / ratios[0], 1.0, 1e-9);
}

TEST(Rollout, Deterministic) {
  const System sys = make_piecewise_rotation(0.9, 0.5);
  PerturbationPlan plan{v2(0.01, 0.0), {v2(0.0, 0.02)}};
  const auto a = rollout(sys, Policy::zero(2), v2(0.3, 0.4), plan, 20);
  const auto b = rollout(sys, Policy::zero(2), v2(0.3, 0.4), plan, 20);
  EXPECT_EQ(a.deviations, b.deviations);
}

TEST(PiecewiseRotation, RotationSteps) {
  const System sys = make_piecewise_rotation(0.9, 0.5);
  const Vec a = sys.step(v2(1, 0), Vec::Zero(2));
  EXPECT_NEAR(a[0], 0.9 * std::cos(0.5), 1e-15);
  EXPECT_NEAR(a[1], 0.9 * std::sin(0.5), 1e-15);
  // x_1 = 0 sits on the A1 side.
  const Vec b = sys.step(v2(0, 1), Vec::Zero(2));
  EXPECT_NEAR(b[0], -0.9 * std::sin(0.5), 1e-15);
  EXPECT_NEAR(b[1], 0.9 * std::cos(0.5), 1e-15);
  EXPECT_EQ(sys.step(Vec::Zero(2), Vec::Zero(2)), Vec::Zero(2));
}

TEST(PiecewiseRotation, RejectsParameters) {
  EXPECT_THROW(make_piecewise_rotation(1.0, 0.5), InvalidParameter);
  EXPECT_THROW(make_piecewise_rotation(0.5, 0.0), InvalidParameter);
  EXPECT_THROW(make_piecewise_rotation(0.5, 1.5), InvalidParameter);
}

TEST(PiecewiseRotation, IssAlongTrajectoriesButSplitPairDiverges) {
  const double c = 0.99;
  const System sys = make_piecewise_rotation(c, 1.0);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vec x0 = rng.uniform_in(Box::cube(2, -2, 2));
    const auto traj = closed_loop(sys, Policy::zero(2), x0, 200);
    for (std::size_t t = 0; t < traj.size(); ++t) {
      EXPECT_LE(traj[t].state.norm(), std::pow(c, t) * x0.norm() * (1 + 1e-12));
    }
  }
  const auto [x, xp] = rotation_split_pair(1e-6 / 2);
  const auto p = rollout(sys, Policy::zero(2), x, PerturbationPlan::state(xp - x), 50);
  EXPECT_LE(distance(x, xp), 1e-6);
  EXPECT_GE(p.max_deviation(), 0.1);
}

TEST(PiecewiseRotation, SplitWitnessGrowsThenDecays) {
  const double eps = 1e-6;
  const System sys = make_piecewise_rotation(0.99, 1.0);
  const auto p = rollout(sys, Policy::zero(2), v2(eps, 1.0), PerturbationPlan::state(v2(-2 * eps, 0.0)), 40);
  EXPECT_GT(p.max_deviation(), 1.0);
  EXPECT_LT(p.deviations.back(), p.max_deviation());
}

TEST(Projection, ClampArithmetic) {
  const System sys = make_projection_system(Vec::Constant(2, -1), Vec::Constant(2, 1));
  EXPECT_EQ(sys.step(v2(0.5, 0.5), v2(1, 1)), v2(1, 1));
  EXPECT_EQ(sys.step(v2(0.2, -0.3), Vec::Zero(2)), v2(0.2, -0.3));
  const Vec r = sys.step(v2(1, 0), v2(0.3, -0.2));
  EXPECT_EQ(r[0], 1.0);
  EXPECT_DOUBLE_EQ(r[1], -0.2);
  EXPECT_THROW(make_projection_system(v2(0, 0), v2(1, 0)), InvalidParameter);
}

TEST(Negation, AlternatesAndPerturbs) {
  const ClosedLoop n = make_negation_system();
  const auto traj = closed_loop(n.system, n.policy, v1(1.0), 4);
  const double expected[] = {1, -1, 1, -1, 1};
  for (int t = 0; t <= 4; ++t) EXPECT_EQ(traj[t].state[0], expected[t]);
  const auto zero = closed_loop(n.system, n.policy, v1(0.0), 4);
  for (const auto& s : zero) EXPECT_EQ(s.state[0], 0.0);
  const auto p = rollout(n.system, n.policy, v1(2.0), PerturbationPlan::input(1, {v1(0.5)}), 2);
  EXPECT_DOUBLE_EQ(p.perturbed[1].state[0], -1.5);
}

TEST(Policy, LipschitzAndOverrides) {
  const Policy lin = Policy::linear(3.0 * Mat::Identity(2, 2));
  EXPECT_NEAR(lin.lipschitz_bound(), 3.0, 1e-12);
  EXPECT_NEAR(lin.sampled_lipschitz({{v2(0, 0), v2(1, 1)}}), 3.0, 1e-12);
  const Policy base = Policy::zero(1);
  const Policy o = Policy::override_at(base, 2, [](const Vec&) { return v1(7.0); });
  EXPECT_EQ(o.act_at(0, v1(1))[0], 0.0);
  EXPECT_EQ(o.act_at(2, v1(1))[0], 7.0);
  EXPECT_EQ(o.act_at(3, v1(1))[0], 0.0);
}

TEST(Plan, MaxOffsets) {
  PerturbationPlan plan{v1(0.0), {v1(0.1), v1(-0.5), v1(0.2)}};
  EXPECT_EQ(plan.max_input_offset_before(0), 0.0);
  EXPECT_EQ(plan.max_input_offset_before(1), 0.1);
  EXPECT_EQ(plan.max_input_offset_before(3), 0.5);
  EXPECT_EQ(plan.max_input_offset_through(0), 0.1);
  EXPECT_EQ(plan.input_offset_at(10, 1)[0], 0.0);
}
