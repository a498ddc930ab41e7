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

#include "hybrid_dp/amplification.h"

#include <cmath>

#include "gtest/gtest.h"

namespace hybrid_dp {
namespace {

// sqrt(2 ln(1.25 / delta)) for delta = 1e-7.
const double kFactor = std::sqrt(2 * std::log(1.25e7));

HybridWeight W(double w) { return *HybridWeight::Create(w); }

TEST(CoalitionModelTest, Bounds) {
  const Cohort cohort = *Cohort::Create(1000, 0.1);
  EXPECT_TRUE(CoalitionModel::Create(0, cohort).ok());
  EXPECT_TRUE(CoalitionModel::Create(900, cohort).ok());
  EXPECT_FALSE(CoalitionModel::Create(901, cohort).ok());
  EXPECT_FALSE(CoalitionModel::Create(-1, cohort).ok());
  EXPECT_EQ(CoalitionModel::FromFraction(0.5, cohort)->adversarial_lm_count(),
            450);
  EXPECT_EQ(CoalitionModel::FromFraction(1.0, cohort)->adversarial_lm_count(),
            900);
  EXPECT_FALSE(CoalitionModel::FromFraction(1.2, cohort).ok());
}

TEST(JointNoiseVarianceTest, ByHand) {
  const Cohort cohort = *Cohort::Create(200, 0.25);
  const NoiseScales scales =
      *NoiseScales::Create(MechanismKind::kGaussian, 0.01, 3.0);
  const CoalitionModel a = *CoalitionModel::Create(50, cohort);
  // 0.36 * 0.01 + (0.4 / 150)^2 * 100 * 3.
  EXPECT_NEAR(JointNoiseVariance(W(0.6), cohort, scales, a),
              0.0036 + 0.4 * 0.4 / (150.0 * 150.0) * 300, 1e-15);
}

TEST(AmplificationTest, SpotValue) {
  const Cohort cohort = *Cohort::Create(1000, 0.1);
  const Mechanism mech = *Mechanism::Gaussian(1.0, 1e-7);
  const CoalitionModel none = *CoalitionModel::Create(0, cohort);
  absl::StatusOr<AmplificationReport> r =
      AmplifiedEpsilonGaussian(W(0.5), cohort, mech, none, 1.0);
  ASSERT_TRUE(r.ok());
  const double s_t_sq = std::pow(kFactor / 100, 2);
  const double s_l_sq = kFactor * kFactor;
  const double s_prime_sq = 0.25 * s_t_sq + 0.25 / 900 * s_l_sq;
  EXPECT_NEAR(r->s_prime_sq, s_prime_sq, 1e-12);
  EXPECT_NEAR(r->s_prime_sq, 9.90e-3, 1e-5);
  const double eps_lm = kFactor * (0.5 / 0.9) / (1000 * std::sqrt(s_prime_sq));
  const double eps_tcm = kFactor * 5.0 / (1000 * std::sqrt(s_prime_sq));
  EXPECT_NEAR(r->epsilon_lm, eps_lm, 1e-12);
  EXPECT_NEAR(r->epsilon_tcm, eps_tcm, 1e-12);
  EXPECT_NEAR(r->epsilon_selected_branch, 0.032, 5e-4);
  EXPECT_EQ(r->binding_group, BindingGroup::kTcm);
  EXPECT_EQ(r->epsilon_prime, r->epsilon_tcm);
  EXPECT_FALSE(r->capped);
}

TEST(AmplificationTest, FullCoalitionAtNaturalWeightGivesBaseEpsilon) {
  for (double c : {0.01, 0.1, 0.4}) {
    const Cohort cohort = *Cohort::Create(5000, c);
    const Mechanism mech = *Mechanism::Gaussian(0.7, 1e-6);
    const CoalitionModel all =
        *CoalitionModel::Create(cohort.lm_size(), cohort);
    absl::StatusOr<AmplificationReport> r =
        AmplifiedEpsilonGaussian(W(c), cohort, mech, all, 1.0);
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(r->epsilon_prime, 0.7, 1e-9);
    EXPECT_NEAR(r->epsilon_tcm, 0.7, 1e-9);
  }
}

TEST(AmplificationTest, NeverExceedsBaseAndGrowsWithCoalition) {
  const Cohort cohort = *Cohort::Create(2000, 0.05);
  const Mechanism mech = *Mechanism::Gaussian(1.0, 1e-7);
  for (double w : {0.0, 0.05, 0.3, 0.9, 1.0}) {
    double previous = -1;
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const CoalitionModel a = *CoalitionModel::FromFraction(f, cohort);
      absl::StatusOr<AmplificationReport> r =
          AmplifiedEpsilonGaussian(W(w), cohort, mech, a, 1.0);
      ASSERT_TRUE(r.ok());
      EXPECT_LE(r->epsilon_prime, 1.0);
      EXPECT_GE(r->epsilon_prime, previous - 1e-15);
      EXPECT_LE(r->epsilon_selected_branch, r->epsilon_prime);
      previous = r->epsilon_prime;
    }
  }
}

TEST(AmplificationTest, LaplaceIsRejected) {
  const Cohort cohort = *Cohort::Create(100, 0.1);
  const CoalitionModel none = *CoalitionModel::Create(0, cohort);
  EXPECT_FALSE(AmplifiedEpsilonGaussian(W(0.5), cohort,
                                        *Mechanism::Laplace(1.0), none, 1.0)
                   .ok());
}

TEST(LaplaceCertificateTest, SupremumIsTheSingleNoiseEpsilon) {
  for (int n_terms : {1, 2, 5, 10, 50}) {
    absl::StatusOr<LaplaceCertificate> cert =
        LaplaceNonAmplificationCertificate(n_terms, 0.5, 1.0);
    ASSERT_TRUE(cert.ok()) << cert.status();
    EXPECT_DOUBLE_EQ(cert->limit, 0.5);
    EXPECT_NEAR(cert->sup_log_ratio, 0.5, 1e-3) << n_terms;
    EXPECT_LE(cert->sup_log_ratio, 0.5 + 1e-9) << n_terms;
  }
}

TEST(LaplaceCertificateTest, Validation) {
  EXPECT_FALSE(LaplaceNonAmplificationCertificate(2, 0, 1).ok());
  EXPECT_FALSE(LaplaceNonAmplificationCertificate(2, 1, 0).ok());
  EXPECT_FALSE(LaplaceNonAmplificationCertificate(2, 1, 1, 10, 1).ok());
}

TEST(AmplificationSweepTest, RowsAreCMajor) {
  AmplificationSweepSpec spec;
  spec.n = 10000;
  spec.cs = {0.05, 0.2};
  spec.adversarial_fractions = {0.0, 1.0};
  spec.mean = 0.5;
  spec.variance = 0.05;
  spec.weight_rule.kind = WeightRuleKind::kNwh;
  absl::StatusOr<std::vector<AmplificationRow>> rows =
      AmplificationSweep(spec);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 4u);
  EXPECT_EQ((*rows)[1].c, 0.05);
  EXPECT_EQ((*rows)[1].adversarial_fraction, 1.0);
  EXPECT_EQ((*rows)[2].c, 0.2);
  // w = c with every LM user adversarial recovers the base epsilon.
  EXPECT_NEAR((*rows)[1].report.epsilon_prime, 1.0, 1e-9);
  EXPECT_NEAR((*rows)[3].report.epsilon_prime, 1.0, 1e-9);
  EXPECT_LT((*rows)[0].report.epsilon_prime, 1.0);
}

}  // namespace
}  // namespace hybrid_dp
