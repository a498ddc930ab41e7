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

#include "hybrid_dp/kmeans.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

namespace hybrid_dp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

KMeansConfig Config(int tau, double eps) {
  return *KMeansConfig::Create(4, tau, eps, 2, 1.0);
}

TEST(KMeansConfigTest, NoiseScales) {
  const KMeansConfig cfg = Config(5, 7.0);
  EXPECT_DOUBLE_EQ(cfg.b_t(), 3.0 * 5 / 7);
  EXPECT_DOUBLE_EQ(cfg.b_l(), 2.0 * 6 / 7);
  EXPECT_EQ(cfg.merge(), MergeVariance::kMeanNoise);
}

TEST(KMeansConfigTest, Validation) {
  EXPECT_FALSE(KMeansConfig::Create(0, 5, 1, 2, 1).ok());
  EXPECT_FALSE(KMeansConfig::Create(4, 0, 1, 2, 1).ok());
  EXPECT_FALSE(KMeansConfig::Create(4, 5, 0, 2, 1).ok());
  EXPECT_FALSE(KMeansConfig::Create(4, 5, 1, 2, kInf).ok());
  EXPECT_TRUE(KMeansConfig::Create(4, 5, kInf, 2, 1).ok());
}

TEST(BudgetTest, BothGroupsSpendEpsilon) {
  for (int tau : {1, 2, 10}) {
    for (double eps : {0.5, 7.0}) {
      absl::StatusOr<BudgetLedger> ledger = HybridBudgetLedger(Config(tau, eps));
      ASSERT_TRUE(ledger.ok()) << ledger.status();
      EXPECT_NEAR(ledger->tcm_total, eps, 1e-12);
      EXPECT_NEAR(ledger->lm_total, eps, 1e-12);
      EXPECT_EQ(ledger->entries.size(), 4u);
    }
  }
}

TEST(RandomizedResponseTest, TruthProbability) {
  const double x = 7.0 / 6;
  EXPECT_NEAR(RandomizedResponseTruthProbability(7.0, 5, 4),
              (std::exp(x) - 1) / (4 + std::exp(x) - 1), 1e-15);
  EXPECT_EQ(RandomizedResponseTruthProbability(kInf, 5, 4), 1.0);
  EXPECT_NEAR(RandomizedResponseTruthProbability(1e4, 1, 4), 1.0, 1e-15);
  EXPECT_NEAR(RandomizedResponseTruthProbability(1e-9, 1, 4), 0.0, 1e-9);
}

TEST(RandomizedResponseTest, AssignmentDistribution) {
  const std::vector<double> d = AssignmentDistribution(2, 3.0, 2, 4);
  EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-15);
  // Log ratio between the true answer and any other is at most eps/(tau+1).
  EXPECT_NEAR(std::log(d[2] / d[0]), 1.0, 1e-12);
  EXPECT_EQ(d[0], d[1]);
  EXPECT_EQ(d[1], d[3]);
}

TEST(WcssTest, ByHand) {
  const PointSet data = *PointSet::Create(2, {0, 0, 1, 0, 0, 1, 1, 1});
  const std::vector<double> centers = {0, 0, 1, 1};
  // Points (1,0) and (0,1) are at squared distance 1 from either center.
  EXPECT_DOUBLE_EQ(Wcss(data, centers), 2.0);
}

TEST(PointSetTest, Validation) {
  EXPECT_FALSE(PointSet::Create(0, {}).ok());
  EXPECT_FALSE(PointSet::Create(2, {1, 2, 3}).ok());
  EXPECT_EQ(PointSet::Create(3, {1, 2, 3, 4, 5, 6})->size(), 2);
}

TEST(Gauss4Test, ShapeAndCentres) {
  SeededRng rng(3);
  const PointSet data = *Gauss4(5000, rng);
  ASSERT_EQ(data.size(), 20000);
  const std::vector<double> truth = {0.25, 0.25, 0.25, 0.75,
                                     0.75, 0.25, 0.75, 0.75};
  // Expected WCSS of the true centres: n d sigma^2.
  EXPECT_NEAR(Wcss(data, truth), 20000 * 2 * 0.028 * 0.028, 0.5);
  for (double v : data.coords()) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

struct Split {
  PointSet tcm;
  PointSet lm;
  PointSet all;
};

Split MakeSplit(int64_t per_cluster, int64_t stride, uint64_t seed) {
  SeededRng rng(seed);
  const PointSet all = *Gauss4(per_cluster, rng);
  std::vector<double> tcm;
  std::vector<double> lm;
  for (int64_t i = 0; i < all.size(); ++i) {
    auto& dst = i % stride == 0 ? tcm : lm;
    dst.insert(dst.end(), all.point(i).begin(), all.point(i).end());
  }
  return Split{*PointSet::Create(2, tcm), *PointSet::Create(2, lm), all};
}

TEST(KMeansTest, NoiselessHybridIsLloydOnAllData) {
  const Split s = MakeSplit(500, 10, 4);
  const KMeansConfig cfg = Config(6, kInf);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const SeededRng trial(seed);
    const ClusteringResult hybrid = *KmeansHybrid(s.tcm, s.lm, cfg, trial);
    const ClusteringResult lloyd = *Lloyd(s.all, cfg, trial);
    ASSERT_EQ(hybrid.centers.size(), 8u);
    for (size_t i = 0; i < 8; ++i) {
      EXPECT_NEAR(hybrid.centers[i], lloyd.centers[i], 1e-6) << seed;
    }
    EXPECT_NEAR(hybrid.wcss, lloyd.wcss, 1e-6 * lloyd.wcss);
  }
}

TEST(KMeansTest, NoiselessBaselinesAreLloyd) {
  const Split s = MakeSplit(500, 10, 5);
  const KMeansConfig cfg = Config(6, kInf);
  const SeededRng trial(2);
  const ClusteringResult tcm = *KmeansTcmBaseline(s.tcm, cfg, trial);
  const ClusteringResult tcm_lloyd = *Lloyd(s.tcm, cfg, trial);
  const ClusteringResult lm = *KmeansLmBaseline(s.all, cfg, trial);
  const ClusteringResult all_lloyd = *Lloyd(s.all, cfg, trial);
  for (size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(tcm.centers[i], tcm_lloyd.centers[i], 1e-12);
    EXPECT_NEAR(lm.centers[i], all_lloyd.centers[i], 1e-12);
  }
}

TEST(KMeansTest, CentresStayInTheBoxUnderHeavyNoise) {
  const Split s = MakeSplit(200, 50, 6);
  const KMeansConfig cfg = Config(4, 0.1);
  const SeededRng trial(1);
  for (const ClusteringResult& r :
       {*KmeansHybrid(s.tcm, s.lm, cfg, trial),
        *KmeansTcmBaseline(s.tcm, cfg, trial),
        *KmeansLmBaseline(s.all, cfg, trial)}) {
    for (double v : r.centers) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_TRUE(std::isfinite(r.wcss));
  }
}

TEST(KMeansTest, SameTrialSameCentres) {
  const Split s = MakeSplit(300, 20, 7);
  const KMeansConfig cfg = Config(5, 7.0);
  const SeededRng trial(9);
  EXPECT_EQ(KmeansHybrid(s.tcm, s.lm, cfg, trial)->centers,
            KmeansHybrid(s.tcm, s.lm, cfg, trial)->centers);
  EXPECT_NE(KmeansHybrid(s.tcm, s.lm, cfg, trial)->centers,
            KmeansHybrid(s.tcm, s.lm, cfg, SeededRng(10))->centers);
}

TEST(KMeansTest, RejectsDimensionMismatch) {
  const PointSet three_d = *PointSet::Create(3, {0.1, 0.2, 0.3});
  const Split s = MakeSplit(10, 2, 1);
  const KMeansConfig cfg = Config(2, 1.0);
  EXPECT_FALSE(KmeansHybrid(three_d, s.lm, cfg, SeededRng(1)).ok());
  EXPECT_FALSE(Lloyd(three_d, cfg, SeededRng(1)).ok());
}

TEST(KMeansExperimentTest, RowsAndThreadInvariance) {
  KMeansExperimentSpec spec;
  spec.points_per_cluster = 300;
  spec.tcm_fraction = 0.05;
  spec.taus = {2, 4};
  spec.trials = 6;
  spec.seed = 11;
  absl::StatusOr<std::vector<KMeansExperimentRow>> one =
      RunKMeansExperiment(spec);
  ASSERT_TRUE(one.ok()) << one.status();
  spec.threads = 3;
  absl::StatusOr<std::vector<KMeansExperimentRow>> three =
      RunKMeansExperiment(spec);
  ASSERT_TRUE(three.ok());
  ASSERT_EQ(one->size(), 2u);
  for (size_t i = 0; i < one->size(); ++i) {
    EXPECT_EQ((*one)[i].tau, spec.taus[i]);
    EXPECT_EQ((*one)[i].hybrid_wcss, (*three)[i].hybrid_wcss);
    EXPECT_EQ((*one)[i].lm_wcss, (*three)[i].lm_wcss);
    EXPECT_GT((*one)[i].lloyd_wcss, 0);
  }
}

TEST(KMeansExperimentTest, Validation) {
  KMeansExperimentSpec spec;
  spec.taus = {};
  EXPECT_FALSE(RunKMeansExperiment(spec).ok());
  spec.taus = {2};
  spec.tcm_fraction = 1.0;
  EXPECT_FALSE(RunKMeansExperiment(spec).ok());
}

}  // namespace
}  // namespace hybrid_dp
