#include "issprobe/audit.hpp"
#include "issprobe/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace issprobe;

namespace {
Vec s1(double a) { return Vec::Constant(1, a); }

GainEnvelope halving_envelope(std::size_t T) {
  GainEnvelope env{2.0, 1.0, {}};
  for (std::size_t t = 0; t <= T; ++t) env.kappa.push_back(std::pow(0.5, t));
  return env;
}

ValueQuery linear_query(const DiscountSchedule& sched, const Reward& r) {
  return ValueQuery{make_scalar_linear(0.5), Policy::zero(1), r, sched};
}
}  // namespace

TEST(Holder, LinearValueSlope) {
  const auto q = linear_query(DiscountSchedule::constant(0.8), make_linear_reward(Vec::Ones(1)));
  const auto pairs = sample_state_pairs(q.system, 200, 3);
  const auto est = holder_of_value(q, pairs);
  EXPECT_NEAR(est.C_hat, 1.0 / 0.6, 1e-6);
}

TEST(Holder, ZeroReward) {
  const auto q = linear_query(DiscountSchedule::constant(0.8), make_zero_reward());
  EXPECT_EQ(holder_of_value(q, sample_state_pairs(q.system, 50, 3)).C_hat, 0.0);
}

TEST(Holder, QInInputMode) {
  const auto q = linear_query(DiscountSchedule::constant(0.8), make_linear_reward(Vec::Ones(1)));
  HolderOptions o;
  o.mode = HolderMode::q_in_du_local;
  // δu ↦ Q(x, δu) has slope 0.8 / 0.6.
  const auto est = holder_of_value(q, sample_input_offsets(q.system, 100, 4), o);
  EXPECT_NEAR(est.C_hat, 0.8 / 0.6, 1e-6);
}

TEST(Holder, SerialMatchesParallel) {
  const auto q = linear_query(DiscountSchedule::constant(0.9), make_signed_power_reward(Vec::Ones(1), 1.0, 0.5));
  const auto pairs = sample_state_pairs(q.system, 300, 8);
  HolderOptions s, p;
  s.alpha = p.alpha = 0.5;
  s.exec = Exec::serial;
  const auto a = holder_of_value(q, pairs, s);
  const auto b = holder_of_value(q, pairs, p);
  EXPECT_EQ(a.C_hat, b.C_hat);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(Constants, ExplicitForms) {
  EXPECT_DOUBLE_EQ(c2_constant(2.0, 0.0), 2.0 * 2.0 * 5.0);
  EXPECT_DOUBLE_EQ(c2_constant(2.0, 3.0), 2.0 * 4.0 * 5.0);
  EXPECT_DOUBLE_EQ(c3_constant(2.0, 0.0, 2.0), 20.0 * 3.0);
  EXPECT_EQ(effective_lipschitz(0.2), 1.0);
}

TEST(Forward, PredictionClosedForm) {
  const auto env = halving_envelope(200);
  // E under pmf 0.2·0.8^t of 0.5^t is 1/3.
  EXPECT_NEAR(forward_prediction(env, 1.0, 1.0, 0.0, DiscountSchedule::constant(0.8)),
              c2_constant(2.0, 0.0) * 5.0 / 3.0, 1e-9);
}

TEST(Forward, LinearSystemConsistent) {
  const System sys = make_scalar_linear(0.5);
  const auto env = halving_envelope(60);
  const std::vector<DiscountSchedule> scheds{DiscountSchedule::constant(0.5), DiscountSchedule::constant(0.8),
                                             DiscountSchedule::finite_horizon(8), DiscountSchedule::finite_horizon(0)};
  const auto reps = forward_check(sys, Policy::zero(1), env, make_linear_class(1), scheds,
                                  sample_state_pairs(sys, 100, 1), sample_input_offsets(sys, 100, 2));
  ASSERT_FALSE(reps.empty());
  for (const auto& r : reps) {
    EXPECT_EQ(r.verdict, Verdict::consistent) << r.schedule << " " << r.mode;
    EXPECT_LE(r.measured, r.predicted);
  }
}

TEST(Forward, ZeroDynamics) {
  const System sys = make_zero_system(1);
  GainEnvelope env{1.0, 1.0, {1.0, 0.0}};
  const auto reps = forward_check(sys, Policy::zero(1), env, make_linear_class(1), {DiscountSchedule::constant(0.8)},
                                  sample_state_pairs(sys, 50, 1), sample_input_offsets(sys, 50, 2));
  for (const auto& r : reps) EXPECT_EQ(r.verdict, Verdict::consistent);
}

TEST(Reverse, BoundDominatesStateDeviation) {
  const System sys = make_scalar_linear(0.5);
  const auto env = halving_envelope(60);
  for (std::size_t t = 1; t <= 8; ++t) {
    const auto rep = reverse_extract(sys, Policy::zero(1), make_linear_class(1), env, s1(1.0),
                                     PerturbationPlan::state(s1(0.1)), t, {1e-1, 1e-2, 1e-3});
    EXPECT_NEAR(rep.measured_deviation, 0.1 * std::pow(0.5, t), 1e-15);
    EXPECT_GE(rep.deviation_bound, rep.measured_deviation);
    EXPECT_EQ(rep.verdict, Verdict::consistent);
    EXPECT_EQ(rep.per_tau.back().tau, 1e-3);
  }
}

TEST(Reverse, ZeroPerturbation) {
  const auto rep = reverse_extract(make_scalar_linear(0.5), Policy::zero(1), make_linear_class(1), halving_envelope(20),
                                   s1(1.0), PerturbationPlan::none(1), 3, {1e-3});
  EXPECT_EQ(rep.measured_deviation, 0.0);
  EXPECT_GE(rep.deviation_bound, 0.0);
}

TEST(Reverse, FixedRewardIsInconclusive) {
  const ClosedLoop n = make_negation_system();
  const auto cls = make_singleton_class(make_linear_reward(Vec::Ones(1)), 1);
  const auto rep = reverse_extract(n.system, n.policy, cls, GainEnvelope{1.0, 1.0, {1.0}}, s1(1.0),
                                   PerturbationPlan::state(s1(0.1)), 3, {1e-3});
  EXPECT_EQ(rep.verdict, Verdict::inconclusive);
}

TEST(Reverse, RejectsTau) {
  EXPECT_THROW(reverse_extract(make_scalar_linear(0.5), Policy::zero(1), make_linear_class(1), halving_envelope(5),
                               s1(1.0), PerturbationPlan::none(1), 2, {1.5}),
               ImproperParameters);
  const auto s = reverse_schedule(3, 0.1);
  EXPECT_NEAR(s.cumulative(3), 1000.0, 1e-9);
  EXPECT_EQ(s.cumulative(4), 0.0);
}

TEST(Demos, Cancellation) {
  const auto rep = cancellation_demo(3, 1.0, 0.5);
  EXPECT_EQ(rep.term_count, 6u);
  EXPECT_LE(std::abs(rep.value_nominal), 1e-12);
  EXPECT_LE(std::abs(rep.value_perturbed), 1e-12);
  EXPECT_GE(rep.min_deviation, 0.5);
}

TEST(Demos, SupValueGrowsAlongClosedLoop) {
  const auto rep = sup_value_not_lyapunov_demo(Vec::Constant(2, -1), Vec::Constant(2, 1), DiscountSchedule::constant(0.9));
  EXPECT_FALSE(rep.witnesses.empty());
  for (const auto& w : rep.witnesses) EXPECT_GT(w.w_next, w.w);
}

TEST(Demos, SupLinearValueFixedCorner) {
  const System sys = make_projection_system(Vec::Constant(2, -1), Vec::Constant(2, 1));
  const Policy pol = Policy::toward(Vec::Ones(2), 0.5);
  const double w = sup_linear_value(sys, pol, DiscountSchedule::constant(0.9), Vec::Ones(2));
  EXPECT_NEAR(w, std::sqrt(2.0) * 10.0, 1e-7);
}
