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

// Differentially private K-means in the hybrid model: a TCM variant on the
// opt-in users, an LM variant on locally noised reports with
// randomized-response cluster assignment, and a hybrid that merges the two
// per-cluster estimates with the PWH weight every iteration.
//
// Randomness is drawn from a trial stream: centers from kInit, per-user
// report noise from kUserNoise, randomized response from kAssignment and
// curator noise from kCuratorNoise. Algorithms run on the same trial stream
// therefore share their initial centers.

#ifndef HYBRID_DP_KMEANS_H_
#define HYBRID_DP_KMEANS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/rng.h"

namespace hybrid_dp {

// Row-major n x dim matrix of points.
class PointSet {
 public:
  static absl::StatusOr<PointSet> Create(int dim, std::vector<double> coords);

  int dim() const { return dim_; }
  int64_t size() const {
    return static_cast<int64_t>(coords_.size()) / dim_;
  }
  std::span<const double> point(int64_t i) const {
    return std::span<const double>(coords_).subspan(
        static_cast<size_t>(i * dim_), static_cast<size_t>(dim_));
  }
  const std::vector<double>& coords() const { return coords_; }

 private:
  PointSet(int dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {}

  int dim_;
  std::vector<double> coords_;
};

// How the PWH merge reads s_T^2. kPerQuery plugs in the Laplace variance of a
// single noisy sum, 2 b_T^2. kMeanNoise divides it by the squared noisy count,
// giving the variance of the noise in the TCM mean itself; it is the reading
// under which a vanishing TCM count hands all weight to the LM estimate.
enum class MergeVariance { kPerQuery, kMeanNoise };

class KMeansConfig {
 public:
  // epsilon may be +infinity (no noise, truthful assignment).
  static absl::StatusOr<KMeansConfig> Create(
      int k, int tau, double epsilon, int dim, double m,
      MergeVariance merge = MergeVariance::kMeanNoise);

  int k() const { return k_; }
  int tau() const { return tau_; }
  double epsilon() const { return epsilon_; }
  int dim() const { return dim_; }
  double m() const { return m_; }
  MergeVariance merge() const { return merge_; }

  // b_T = (m d + 1) tau / eps: scale of the curator's count and sum noise.
  double b_t() const;
  // b_L = m d (tau + 1) / eps: scale of each LM user's one-time report noise.
  double b_l() const;

 private:
  KMeansConfig(int k, int tau, double epsilon, int dim, double m,
               MergeVariance merge)
      : k_(k), tau_(tau), epsilon_(epsilon), dim_(dim), m_(m), merge_(merge) {}

  int k_;
  int tau_;
  double epsilon_;
  int dim_;
  double m_;
  MergeVariance merge_;
};

struct ClusteringResult {
  // k x dim, row-major, inside [0, m]^dim.
  std::vector<double> centers;
  // WCSS of the algorithm's own input data against `centers`.
  double wcss = 0;
  int iterations_run = 0;
};

// Probability that an LM user reports its true nearest cluster:
// (e^x - 1) / (K + e^x - 1) with x = eps / (tau + 1); 1 when eps is infinite.
double RandomizedResponseTruthProbability(double epsilon, int tau, int k);

// Distribution of the reported cluster given the true one: p + (1 - p) / K on
// the true cluster and (1 - p) / K elsewhere.
std::vector<double> AssignmentDistribution(int true_cluster, double epsilon,
                                           int tau, int k);

struct BudgetEntry {
  std::string group;
  std::string query;
  int repetitions = 0;
  double epsilon_each = 0;
};

struct BudgetLedger {
  std::vector<BudgetEntry> entries;
  double tcm_total = 0;
  double lm_total = 0;
};

// Per-user privacy spend of the hybrid algorithm. Fails unless both groups
// spend exactly eps (within kRelativeTolerance).
absl::StatusOr<BudgetLedger> HybridBudgetLedger(const KMeansConfig& cfg);

absl::StatusOr<ClusteringResult> KmeansHybrid(const PointSet& tcm_data,
                                              const PointSet& lm_data,
                                              const KMeansConfig& cfg,
                                              const SeededRng& trial);

// Noisy counts and sums at scale b_T on the TCM data alone.
absl::StatusOr<ClusteringResult> KmeansTcmBaseline(const PointSet& tcm_data,
                                                   const KMeansConfig& cfg,
                                                   const SeededRng& trial);

// Every user treated as local: one noised report, then randomized-response
// assignment each iteration.
absl::StatusOr<ClusteringResult> KmeansLmBaseline(const PointSet& all_data,
                                                  const KMeansConfig& cfg,
                                                  const SeededRng& trial);

// Non-private Lloyd iterations from the same initial centers.
absl::StatusOr<ClusteringResult> Lloyd(const PointSet& data,
                                       const KMeansConfig& cfg,
                                       const SeededRng& trial);

// Sum over points of the squared distance to the nearest center.
double Wcss(const PointSet& data, std::span<const double> centers);

// Spherical Gaussian blobs in [0, m]^dim, clamped to the box.
absl::StatusOr<PointSet> GaussianBlobs(std::span<const double> centers,
                                       int dim, double sigma,
                                       int64_t points_per_cluster, double m,
                                       SeededRng& rng);

// Four 2-d clusters at (0.25|0.75, 0.25|0.75) with sigma = 0.028 in [0, 1]^2.
absl::StatusOr<PointSet> Gauss4(int64_t points_per_cluster, SeededRng& rng);

struct KMeansExperimentSpec {
  int64_t points_per_cluster = 4000;
  double tcm_fraction = 0.01;
  double epsilon = 7.0;
  std::vector<int> taus;
  int trials = 50;
  uint64_t seed = 0;
  int threads = 1;
  MergeVariance merge = MergeVariance::kMeanNoise;
};

// Mean WCSS over trials, evaluated on all data, for each tau.
struct KMeansExperimentRow {
  int tau = 0;
  double tcm_fraction = 0;
  double epsilon = 0;
  int trials = 0;
  double hybrid_wcss = 0;
  double tcm_wcss = 0;
  double lm_wcss = 0;
  double lloyd_wcss = 0;
  double hybrid_se = 0;
  double tcm_se = 0;
  double lm_se = 0;
};

// Every trial regenerates the Gauss4 data and the TCM/LM partition.
absl::StatusOr<std::vector<KMeansExperimentRow>> RunKMeansExperiment(
    const KMeansExperimentSpec& spec);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_KMEANS_H_
