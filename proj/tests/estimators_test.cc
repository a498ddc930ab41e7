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

#include "hybrid_dp/estimators.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "hybrid_dp/presets.h"

namespace hybrid_dp {
namespace {

NoiseScales Scales(double s_t_sq, double s_l_sq) {
  return *NoiseScales::Create(MechanismKind::kLaplace, s_t_sq, s_l_sq);
}

TEST(SampleSetTest, ClampsIntoSupport) {
  absl::StatusOr<SampleSet> s =
      SampleSet::Create({-1.0, 0.5, 2.0}, {0.3, NAN}, 1.0);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->clamped_count(), 3);
  EXPECT_EQ(s->tcm_values()[0], 0.0);
  EXPECT_EQ(s->tcm_values()[2], 1.0);
  EXPECT_EQ(s->lm_values()[1], 0.0);
  EXPECT_EQ(s->size(), 5);
}

TEST(SampleSetTest, RejectsEmptyGroups) {
  EXPECT_FALSE(SampleSet::Create({}, {0.5}, 1.0).ok());
  EXPECT_FALSE(SampleSet::Create({0.5}, {}, 1.0).ok());
  EXPECT_FALSE(SampleSet::Create({0.5}, {0.5}, 0.0).ok());
}

TEST(HybridWeightTest, Range) {
  EXPECT_TRUE(HybridWeight::Create(0).ok());
  EXPECT_TRUE(HybridWeight::Create(1).ok());
  EXPECT_FALSE(HybridWeight::Create(-0.01).ok());
  EXPECT_FALSE(HybridWeight::Create(1.01).ok());
  EXPECT_FALSE(HybridWeight::Create(NAN).ok());
}

TEST(EmpiricalMeanTest, ConstantData) {
  SampleSet s = *SampleSet::Create({0.5, 0.5}, {0.5, 0.5, 0.5}, 1.0);
  EXPECT_EQ(EmpiricalMean(s), 0.5);
}

TEST(EmpiricalMeanTest, Arithmetic) {
  SampleSet s = *SampleSet::Create({0, 1}, {1, 1}, 1.0);
  EXPECT_EQ(EmpiricalMean(s), 0.75);
}

TEST(EmpiricalMeanTest, BetaUniformDraws) {
  SeededRng rng(5);
  const DistributionPreset uniform = *FindPreset("beta-mid");
  std::vector<double> tcm = *SamplePreset(uniform, 50000, rng);
  std::vector<double> lm = *SamplePreset(uniform, 50000, rng);
  SampleSet s = *SampleSet::Create(std::move(tcm), std::move(lm), 1.0);
  EXPECT_NEAR(EmpiricalMean(s), 0.5, 4 * std::sqrt(1.0 / 12) / std::sqrt(1e5));
}

TEST(EstimatorTest, NoiselessEstimatorsAreExactMeans) {
  SampleSet s = *SampleSet::Create({0.1, 0.3}, {0.6, 0.8, 1.0}, 1.0);
  const NoiseScales zero = Scales(0, 0);
  const SeededRng trial(3);
  EXPECT_DOUBLE_EQ(TcmOnly(s, zero, trial), 0.2);
  EXPECT_DOUBLE_EQ(LmOnly(s, zero, trial), 0.8);
  EXPECT_DOUBLE_EQ(FullLm(s, zero, trial), EmpiricalMean(s));
  // w = c = 2/5 reproduces the empirical mean.
  EXPECT_NEAR(Hybrid(s, *HybridWeight::Create(0.4), zero, trial),
              EmpiricalMean(s), 1e-15);
}

TEST(EstimatorTest, HybridEndpointsAreTheSubgroupEstimators) {
  SampleSet s = *SampleSet::Create({0.1, 0.3}, {0.6, 0.8, 1.0}, 1.0);
  const NoiseScales scales = Scales(0.04, 2.0);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const SeededRng trial(seed);
    EXPECT_EQ(Hybrid(s, *HybridWeight::Create(1), scales, trial),
              TcmOnly(s, scales, trial));
    EXPECT_EQ(Hybrid(s, *HybridWeight::Create(0), scales, trial),
              LmOnly(s, scales, trial));
  }
}

TEST(EstimatorTest, SameTrialSameOutput) {
  SampleSet s = *SampleSet::Create({0.1, 0.3}, {0.6, 0.8, 1.0}, 1.0);
  const NoiseScales scales = Scales(0.04, 2.0);
  const SeededRng trial(17);
  EXPECT_EQ(FullLm(s, scales, trial), FullLm(s, scales, trial));
  EXPECT_NE(FullLm(s, scales, trial), FullLm(s, scales, SeededRng(18)));
}

TEST(EstimatorTest, FullLmSharesLmUsersNoiseWithLmOnly) {
  // With zero TCM data noise contribution isolated, the LM part of Full-LM
  // and LM-Only draw the same per-user noise.
  SampleSet s = *SampleSet::Create({0.0}, {0.5, 0.5, 0.5}, 1.0);
  const NoiseScales scales = Scales(0, 1.0);
  const SeededRng trial(2);
  const double lm_sum = 3 * LmOnly(s, scales, trial);
  const double full_sum = 4 * FullLm(s, scales, trial);
  // full_sum - lm_sum is the TCM user's single noisy report.
  SeededRng user = trial.Derive(streams::kUserNoise).Derive(0);
  EXPECT_NEAR(full_sum - lm_sum, SampleNoise(scales, NoiseTarget::kPerUser, user),
              1e-12);
}

TEST(EstimatorTest, UnbiasedInTheHomogeneousSetting) {
  // Fresh data and noise per trial; every estimator averages to mu = 0.5.
  const DistributionPreset preset = *FindPreset("beta-mid");
  const NoiseScales scales = Scales(0.05, 2.0);
  const HybridWeight w = *HybridWeight::Create(0.7);
  constexpr int kTrials = 100000;
  double sum[4] = {0, 0, 0, 0};
  double sum_sq[4] = {0, 0, 0, 0};
  for (int i = 0; i < kTrials; ++i) {
    const SeededRng trial(static_cast<uint64_t>(i));
    SeededRng data = trial.Derive(streams::kData);
    std::vector<double> tcm = *SamplePreset(preset, 8, data);
    std::vector<double> lm = *SamplePreset(preset, 32, data);
    const SampleSet s = *SampleSet::Create(std::move(tcm), std::move(lm), 1.0);
    const double est[4] = {TcmOnly(s, scales, trial), FullLm(s, scales, trial),
                           LmOnly(s, scales, trial),
                           Hybrid(s, w, scales, trial)};
    for (int e = 0; e < 4; ++e) {
      sum[e] += est[e];
      sum_sq[e] += est[e] * est[e];
    }
  }
  for (int e = 0; e < 4; ++e) {
    const double mean = sum[e] / kTrials;
    const double se = std::sqrt((sum_sq[e] / kTrials - mean * mean) / kTrials);
    EXPECT_NEAR(mean, 0.5, 4 * se) << e;
  }
}

TEST(EstimatorTest, FullLmMseMatchesPrivacyVariance) {
  // Fixed data, fresh noise: E[(FullLm - mean)^2] = s_L^2 / n, with
  // s_L^2 = 2 (Laplace, eps = 1, m = 1) and n = 1000.
  std::vector<double> tcm(100, 0.5);
  std::vector<double> lm(900, 0.25);
  SampleSet s = *SampleSet::Create(tcm, lm, 1.0);
  const NoiseScales scales = Scales(2.0e-4, 2.0);
  const double truth = EmpiricalMean(s);
  constexpr int kTrials = 20000;
  double sum = 0;
  double sum_sq = 0;
  for (int i = 0; i < kTrials; ++i) {
    const double e = FullLm(s, scales, SeededRng(i)) - truth;
    sum += e * e;
    sum_sq += e * e * e * e;
  }
  const double mse = sum / kTrials;
  const double se = std::sqrt((sum_sq / kTrials - mse * mse) / kTrials);
  EXPECT_NEAR(mse, 0.002, 3 * se);
}

TEST(EstimatorTest, NwhNoiseMatchesClosedForm) {
  // Constant data isolates noise: E = c^2 s_T^2 + (1 - c) s_L^2 / n.
  std::vector<double> tcm(10, 0.5);
  std::vector<double> lm(40, 0.5);
  SampleSet s = *SampleSet::Create(tcm, lm, 1.0);
  const NoiseScales scales = Scales(0.02, 2.0);
  const HybridWeight w = *HybridWeight::Create(0.2);
  constexpr int kTrials = 40000;
  double sum = 0;
  double sum_sq = 0;
  for (int i = 0; i < kTrials; ++i) {
    const double e = Hybrid(s, w, scales, SeededRng(i)) - 0.5;
    sum += e * e;
    sum_sq += e * e * e * e;
  }
  const double mse = sum / kTrials;
  const double se = std::sqrt((sum_sq / kTrials - mse * mse) / kTrials);
  const double expected = 0.04 * 0.02 + 0.8 * 2.0 / 50;
  EXPECT_NEAR(mse, expected, 3 * se);
}

}  // namespace
}  // namespace hybrid_dp
