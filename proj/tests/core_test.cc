//
// Copyright 2026 The hybrid_dp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "hybrid_dp/core.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace hybrid_dp {
namespace {

using ::testing::HasSubstr;

GroupDistribution Group(double mean, double variance, double m) {
  return *GroupDistribution::Create(mean, variance, m);
}

TEST(GroupDistributionTest, AcceptsValidMoments) {
  absl::StatusOr<GroupDistribution> g = GroupDistribution::Create(0.5, 0.1, 1);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->mean(), 0.5);
  EXPECT_EQ(g->variance(), 0.1);
  EXPECT_EQ(g->support_max(), 1);
}

TEST(GroupDistributionTest, RejectsNegativeVariance) {
  absl::StatusOr<GroupDistribution> g = GroupDistribution::Create(0.5, -1e-3, 1);
  EXPECT_EQ(g.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(g.status().message(), HasSubstr("sigma^2"));
}

TEST(GroupDistributionTest, RejectsMeanOutsideSupport) {
  EXPECT_FALSE(GroupDistribution::Create(-0.1, 0, 1).ok());
  EXPECT_FALSE(GroupDistribution::Create(1.1, 0, 1).ok());
  EXPECT_TRUE(GroupDistribution::Create(1.0, 0, 1).ok());
}

TEST(GroupDistributionTest, PopoviciuBoundIsHard) {
  EXPECT_TRUE(GroupDistribution::Create(1, 1.0, 2).ok());  // m^2/4 exactly
  absl::StatusOr<GroupDistribution> g = GroupDistribution::Create(1, 1.01, 2);
  EXPECT_EQ(g.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(g.status().message(), HasSubstr("Popoviciu"));
}

TEST(GroupDistributionTest, RejectsNonPositiveSupport) {
  EXPECT_FALSE(GroupDistribution::Create(0, 0, 0).ok());
}

TEST(CohortTest, GroupSizes) {
  absl::StatusOr<Cohort> cohort = Cohort::Create(1000, 0.1);
  ASSERT_TRUE(cohort.ok());
  EXPECT_EQ(cohort->tcm_size(), 100);
  EXPECT_EQ(cohort->lm_size(), 900);
}

TEST(CohortTest, RejectsCOutsideOpenInterval) {
  for (double c : {0.0, 1.0, -0.2, 1.5}) {
    absl::StatusOr<Cohort> cohort = Cohort::Create(100, c);
    EXPECT_EQ(cohort.status().code(), absl::StatusCode::kInvalidArgument);
    EXPECT_THAT(cohort.status().message(), HasSubstr("c must lie in (0,1)"));
  }
}

TEST(CohortTest, BothGroupsMustBeNonempty) {
  EXPECT_FALSE(Cohort::Create(100, 0.005).ok());
  EXPECT_FALSE(Cohort::Create(100, 0.995).ok());
  EXPECT_TRUE(Cohort::Create(100, 0.01).ok());
  EXPECT_TRUE(Cohort::Create(100, 0.99).ok());
}

TEST(CohortTest, EffectiveUsesRoundedGroupSize) {
  Cohort cohort = *Cohort::Create(10, 0.26);
  EXPECT_EQ(cohort.tcm_size(), 3);
  EXPECT_DOUBLE_EQ(cohort.Effective().c(), 0.3);
  EXPECT_EQ(cohort.Effective().n(), 10);
}

TEST(MixtureTest, IdenticalGroupsAreTheirOwnMixture) {
  const GroupDistribution g = Group(0.5, 1.0 / 36, 1);
  for (double c : {0.01, 0.3, 0.9}) {
    const MixtureView v = MixtureOf(g, g, *Cohort::Create(1000, c));
    EXPECT_NEAR(v.mu, 0.5, 1e-15);
    EXPECT_NEAR(v.sigma_sq, 1.0 / 36, 1e-15);
    EXPECT_EQ(v.m, 1);
  }
}

TEST(MixtureTest, TwoPointMasses) {
  const MixtureView v =
      MixtureOf(Group(0, 0, 1), Group(1, 0, 1), *Cohort::Create(10, 0.5));
  EXPECT_DOUBLE_EQ(v.mu, 0.5);
  EXPECT_DOUBLE_EQ(v.sigma_sq, 0.25);
  EXPECT_EQ(v.m, 1);
}

TEST(MixtureTest, UnequalSupports) {
  // E[X^2] = 0.5 (0.0625 + 0.01) + 0.5 (0.5625 + 0.01) = 0.3225.
  const MixtureView v = MixtureOf(Group(0.25, 0.01, 1), Group(0.75, 0.01, 2),
                                  *Cohort::Create(10, 0.5));
  EXPECT_DOUBLE_EQ(v.mu, 0.5);
  EXPECT_NEAR(v.sigma_sq, 0.0725, 1e-15);
  EXPECT_EQ(v.m, 2);
}

TEST(MixtureTest, SymmetricUnderGroupSwap) {
  const GroupDistribution t = Group(0.2, 0.03, 1);
  const GroupDistribution l = Group(0.7, 0.05, 1.5);
  const MixtureView a = MixtureOf(t, l, *Cohort::Create(100, 0.3));
  const MixtureView b = MixtureOf(l, t, *Cohort::Create(100, 0.7));
  EXPECT_NEAR(a.mu, b.mu, 1e-15);
  EXPECT_NEAR(a.sigma_sq, b.sigma_sq, 1e-15);
  EXPECT_EQ(a.m, b.m);
}

TEST(PrivacyParamsTest, Validation) {
  EXPECT_TRUE(PrivacyParams::Create(1, 0).ok());
  EXPECT_TRUE(PrivacyParams::Create(0.5, 1e-7).ok());
  EXPECT_FALSE(PrivacyParams::Create(0, 0).ok());
  EXPECT_FALSE(PrivacyParams::Create(-1, 0).ok());
  EXPECT_FALSE(PrivacyParams::Create(1, 1).ok());
  EXPECT_FALSE(PrivacyParams::Create(1, -1e-9).ok());
}

TEST(HomogeneityTest, ComparesMeanAndVariance) {
  EXPECT_TRUE(IsHomogeneous(Group(0.5, 0.1, 1), Group(0.5, 0.1, 2)));
  EXPECT_FALSE(IsHomogeneous(Group(0.5, 0.1, 1), Group(0.6, 0.1, 1)));
  EXPECT_FALSE(IsHomogeneous(Group(0.5, 0.1, 1), Group(0.5, 0.2, 1)));
}

}  // namespace
}  // namespace hybrid_dp
