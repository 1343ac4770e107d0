#include "issprobe/errors.hpp"
#include "issprobe/rewards.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace issprobe;

namespace {
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
const Vec kU0 = Vec::Zero(1);
}  // namespace

TEST(SignedPower, SupOverStandardBasis) {
  const auto cls = make_signed_power_class(2, 1.0, 1.0);
  const auto s = cls.sup(v2(3, 4), kU0, v2(0, 0), kU0);
  EXPECT_DOUBLE_EQ(s.value, 4.0);
  EXPECT_TRUE(s.exact);
  EXPECT_GE(s.value, std::pow(2.0, -0.5) * 5.0);
  EXPECT_EQ(cls.sup(v2(1, 2), kU0, v2(1, 2), kU0).value, 0.0);
  EXPECT_EQ(cls.members().size(), 4u);
  EXPECT_NEAR(cls.declared_c(), std::pow(2.0, -0.5), 1e-15);
  EXPECT_TRUE(cls.symmetric());
}

TEST(SignedPower, HolderCheckOnScalar) {
  const Reward r = make_signed_power_reward(Vec::Ones(1), 2.0, 0.5);
  const double diff = r(Vec::Constant(1, 4.0), kU0) - r(Vec::Constant(1, 1.0), kU0);
  EXPECT_DOUBLE_EQ(diff, 2.0);
  EXPECT_LE(diff, 2.0 * std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(r(Vec::Constant(1, -4.0), kU0), -4.0);
}

TEST(SignedPower, RejectsNonOrthonormal) {
  EXPECT_THROW(make_signed_power_class({v2(1, 0), v2(1, 1)}, 1.0, 1.0), NotOrthonormal);
}

TEST(LinearClass, DualNormOracle) {
  const auto cls = make_linear_class(2, 1.5);
  const auto s = cls.sup(v2(3, 4), kU0, v2(0, 0), kU0);
  EXPECT_DOUBLE_EQ(s.value, 7.5);
  ASSERT_TRUE(s.witness.has_value());
  EXPECT_NEAR((*s.witness)(v2(3, 4), kU0) - (*s.witness)(v2(0, 0), kU0), 7.5, 1e-12);
  EXPECT_EQ(cls.sup(v2(3, 4), kU0, v2(3, 4), kU0).value, 0.0);
}

TEST(LinearClass, WeightedSupIsNormOfWeightedSum) {
  const auto cls = make_linear_class(2);
  const auto s = cls.sup_weighted({1.0, -0.5}, {v2(1, 0), v2(0, 2)}, {kU0, kU0}, {v2(0, 0), v2(0, 0)}, {kU0, kU0});
  EXPECT_NEAR(s.value, std::sqrt(2.0), 1e-15);
}

TEST(NormReward, Values) {
  const Reward r = make_norm_reward();
  EXPECT_DOUBLE_EQ(r(v2(3, 4), kU0), 5.0);
  EXPECT_EQ(r(v2(0, 0), kU0), 0.0);
  const auto pairs = sample_box_pairs(Box::cube(3, -1, 1), 1, 200, 4);
  for (const auto& p : pairs) EXPECT_LE(std::abs(r(p.x, p.u) - r(p.y, p.w)), (p.x - p.y).norm() + 1e-15);
}

TEST(Certify, SignedPowerUnitExponent) {
  const auto cls = make_signed_power_class(2, 1.0, 1.0);
  const auto pairs = sample_box_pairs(Box::cube(2, -1, 1), 1, 10000, 11);
  const auto rep = certify_sensitivity(cls, pairs);
  EXPECT_GE(rep.c_hat, std::pow(2.0, -0.5) - 1e-9);
  EXPECT_LE(rep.c_hat, 1.0 + 1e-12);
  EXPECT_FALSE(rep.violation);
  EXPECT_TRUE(rep.sup_exact);
  EXPECT_EQ(rep.n_used + rep.n_excluded, pairs.size());
}

TEST(Certify, HolderClassIsFullySensitive) {
  const auto cls = make_holder_class(2, 1.0, 0.5);
  const auto rep = certify_sensitivity(cls, sample_box_pairs(Box::cube(2, -1, 1), 1, 500, 2));
  EXPECT_NEAR(rep.c_hat, 1.0, 1e-12);
  EXPECT_FALSE(rep.violation);
  EXPECT_LE(rep.C_hat, 1.0 + 1e-9);
}

TEST(Certify, ZeroRewardDiscriminatesNothing) {
  const auto cls = make_singleton_class(make_zero_reward(), 1);
  auto traits = cls.traits();
  const auto rep = certify_sensitivity(cls, sample_box_pairs(Box::cube(1, -1, 1), 1, 100, 3));
  EXPECT_EQ(rep.c_hat, 0.0);
  EXPECT_TRUE(rep.violation);
  EXPECT_FALSE(traits.symmetric);
}

TEST(Certify, ExcludesClosePairs) {
  std::vector<PointPair> pairs{{v2(0, 0), kU0, v2(0, 1e-12), kU0}, {v2(0, 0), kU0, v2(1, 0), kU0}};
  const auto rep = certify_sensitivity(make_linear_class(2), pairs);
  EXPECT_EQ(rep.n_excluded, 1u);
  EXPECT_EQ(rep.n_used, 1u);
  std::vector<PointPair> none{{v2(0, 0), kU0, v2(0, 0), kU0}};
  EXPECT_THROW(certify_sensitivity(make_linear_class(2), none), DegeneratePairs);
}

TEST(Certify, SerialMatchesParallel) {
  const auto cls = make_signed_power_class(3, 1.0, 0.5);
  const auto pairs = sample_box_pairs(Box::cube(3, -1, 1), 1, 2000, 9);
  SensitivityOptions s, p;
  s.exec = Exec::serial;
  p.exec = Exec::parallel;
  const auto a = certify_sensitivity(cls, pairs, s);
  const auto b = certify_sensitivity(cls, pairs, p);
  EXPECT_EQ(a.c_hat, b.c_hat);
  EXPECT_EQ(a.C_hat, b.C_hat);
  EXPECT_EQ(a.c_witness, b.c_witness);
  EXPECT_EQ(a.alpha_fit, b.alpha_fit);
}

TEST(Parse, RewardAndClassSpecs) {
  const Reward r = parse_reward("linear:v=1;2,C=2");
  EXPECT_DOUBLE_EQ(r(v2(1, 1), kU0), 6.0);
  EXPECT_EQ(parse_reward_class("signed_power:d=3,alpha=0.5,C=1").members().size(), 6u);
  EXPECT_THROW(parse_reward_class("signed_power:d=2,beta=1"), ConfigError);
  EXPECT_THROW(parse_reward("mystery"), ConfigError);
}

TEST(Sequence, ShiftedAndIndexed) {
  RewardSequence seq({make_linear_reward(Vec::Ones(1), 1.0), make_linear_reward(-Vec::Ones(1), 1.0)},
                     make_zero_reward());
  const Vec x = Vec::Constant(1, 2.0);
  EXPECT_EQ(seq.at(0)(x, kU0), 2.0);
  EXPECT_EQ(seq.at(1)(x, kU0), -2.0);
  EXPECT_EQ(seq.at(5)(x, kU0), 0.0);
  EXPECT_EQ(seq.shifted(1).at(0)(x, kU0), -2.0);
}

TEST(SignedPower, BoundHoldsAgainstOrigin) {
  for (int d : {1, 2, 3, 5}) {
    for (double alpha : {0.5, 1.0}) {
      const auto cls = make_signed_power_class(d, 1.0, alpha);
      auto pairs = sample_box_pairs(Box::cube(d, -1, 1), 1, 2000, 21);
      for (auto& p : pairs) p.y.setZero();
      EXPECT_GE(certify_sensitivity(cls, pairs).c_hat, std::pow(d, -alpha / 2) - 1e-9);
    }
  }
}

TEST(SignedPower, BoundHoldsForOppositeSigns) {
  for (int d : {1, 2, 3, 5}) {
    for (double alpha : {0.5, 1.0}) {
      const auto cls = make_signed_power_class(d, 1.0, alpha);
      auto pairs = sample_box_pairs(Box::cube(d, -1, 1), 1, 2000, 22);
      for (auto& p : pairs) p.y = -p.y.cwiseAbs().cwiseProduct(p.x.cwiseSign());
      EXPECT_GE(certify_sensitivity(cls, pairs).c_hat, std::pow(d, -alpha / 2) - 1e-9);
    }
  }
}

TEST(SignedPower, SameSignPairsFallBelowDeclaredForRootExponent) {
  const auto cls = make_signed_power_class(1, 1.0, 0.5);
  std::vector<PointPair> pairs{{Vec::Constant(1, 0.9), kU0, Vec::Constant(1, 0.5), kU0}};
  const auto rep = certify_sensitivity(cls, pairs);
  EXPECT_NEAR(rep.c_hat, (std::sqrt(0.9) - std::sqrt(0.5)) / std::sqrt(0.4), 1e-12);
  EXPECT_TRUE(rep.violation);
}
