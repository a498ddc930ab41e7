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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hybrid_dp/analytics.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/mechanisms.h"
#include "hybrid_dp/parallel.h"

namespace hybrid_dp {
namespace {

// Noisy TCM counts at or below zero are floored here before dividing.
constexpr double kCountFloor = 1e-6;

// Offset of the per-tau algorithm streams inside an experiment trial.
constexpr uint64_t kAlgorithmStreams = 1000;

using Centers = std::vector<double>;

Centers InitialCenters(const KMeansConfig& cfg, const SeededRng& trial) {
  SeededRng rng = trial.Derive(streams::kInit);
  Centers centers(static_cast<size_t>(cfg.k() * cfg.dim()));
  for (double& v : centers) v = rng.UniformDouble() * cfg.m();
  return centers;
}

int Nearest(std::span<const double> x, const Centers& centers, int k) {
  const size_t dim = x.size();
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < k; ++j) {
    double dist = 0;
    for (size_t a = 0; a < dim; ++a) {
      const double diff = x[a] - centers[j * dim + a];
      dist += diff * diff;
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

void ClampCenter(std::span<double> center, double m) {
  for (double& v : center) v = std::clamp(v, 0.0, m);
}

std::span<double> CenterOf(Centers& centers, int cluster, int dim) {
  return std::span<double>(centers).subspan(static_cast<size_t>(cluster * dim),
                                            static_cast<size_t>(dim));
}

absl::Status CheckData(const PointSet& data, const KMeansConfig& cfg,
                       std::string_view name) {
  if (data.dim() != cfg.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        std::string(name), " has dimension ", data.dim(), ", config expects ", cfg.dim()));
  }
  if (data.size() == 0) {
    return absl::InvalidArgumentError(absl::StrCat(std::string(name), " is empty"));
  }
  return absl::OkStatus();
}

// Exact per-cluster counts and coordinate sums of TCM data.
struct ClusterSums {
  std::vector<double> counts;
  std::vector<double> sums;
};

ClusterSums SumByNearest(const PointSet& data, const Centers& centers,
                         int k) {
  const int dim = data.dim();
  ClusterSums out{std::vector<double>(k, 0.0),
                  std::vector<double>(static_cast<size_t>(k * dim), 0.0)};
  for (int64_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    const int j = Nearest(x, centers, k);
    out.counts[j] += 1;
    for (int a = 0; a < dim; ++a) out.sums[j * dim + a] += x[a];
  }
  return out;
}

// Adds Lap(b_T) to each count and Lap^d(b_T) to each sum.
void NoisifyTcm(ClusterSums& sums, const KMeansConfig& cfg, SeededRng& rng) {
  const double b = cfg.b_t();
  const int dim = cfg.dim();
  for (int j = 0; j < cfg.k(); ++j) {
    sums.counts[j] += SampleLaplace(b, rng);
    for (int a = 0; a < dim; ++a) sums.sums[j * dim + a] += SampleLaplace(b, rng);
  }
}

std::vector<double> NoisyReports(const PointSet& data, const KMeansConfig& cfg,
                                 const SeededRng& trial) {
  const SeededRng user_streams = trial.Derive(streams::kUserNoise);
  std::vector<double> reports = data.coords();
  const double b = cfg.b_l();
  const int dim = cfg.dim();
  for (int64_t i = 0; i < data.size(); ++i) {
    SeededRng rng = user_streams.Derive(static_cast<uint64_t>(i));
    for (int a = 0; a < dim; ++a) reports[i * dim + a] += SampleLaplace(b, rng);
  }
  return reports;
}

// Per-cluster counts and sums of the LM reports, grouped by each user's
// randomized-response answer about its true nearest cluster.
ClusterSums SumByRandomizedResponse(const PointSet& data,
                                    const std::vector<double>& reports,
                                    const Centers& centers,
                                    const KMeansConfig& cfg, SeededRng& rng) {
  const int dim = cfg.dim();
  const int k = cfg.k();
  const double p = RandomizedResponseTruthProbability(cfg.epsilon(),
                                                      cfg.tau(), k);
  std::uniform_int_distribution<int> uniform_cluster(0, k - 1);
  ClusterSums out{std::vector<double>(k, 0.0),
                  std::vector<double>(static_cast<size_t>(k * dim), 0.0)};
  for (int64_t i = 0; i < data.size(); ++i) {
    int j = Nearest(data.point(i), centers, k);
    if (p < 1 && !(rng.UniformDouble() < p)) j = uniform_cluster(rng);
    out.counts[j] += 1;
    for (int a = 0; a < dim; ++a) out.sums[j * dim + a] += reports[i * dim + a];
  }
  return out;
}

ClusteringResult Finish(Centers centers, const PointSet& data, int iterations) {
  ClusteringResult result;
  result.wcss = Wcss(data, centers);
  result.centers = std::move(centers);
  result.iterations_run = iterations;
  return result;
}

}  // namespace

absl::StatusOr<PointSet> PointSet::Create(int dim, std::vector<double> coords) {
  if (dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be >= 1, got ", dim));
  }
  if (coords.size() % static_cast<size_t>(dim) != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coordinate count ", coords.size(), " is not a multiple of ", dim));
  }
  return PointSet(dim, std::move(coords));
}

absl::StatusOr<KMeansConfig> KMeansConfig::Create(int k, int tau,
                                                  double epsilon, int dim,
                                                  double m,
                                                  MergeVariance merge) {
  if (k < 1 || tau < 1 || dim < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "K, tau and d must be >= 1, got K=", k, " tau=", tau, " d=", dim));
  }
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  if (!(m > 0) || !std::isfinite(m)) {
    return absl::InvalidArgumentError(
        absl::StrCat("m must be finite and > 0, got ", m));
  }
  return KMeansConfig(k, tau, epsilon, dim, m, merge);
}

double KMeansConfig::b_t() const {
  return (m_ * dim_ + 1) * tau_ / epsilon_;
}

double KMeansConfig::b_l() const {
  return m_ * dim_ * (tau_ + 1) / epsilon_;
}

double RandomizedResponseTruthProbability(double epsilon, int tau, int k) {
  if (std::isinf(epsilon)) return 1.0;
  // (e^x - 1) / (K + e^x - 1) rewritten to stay finite for large x.
  const double x = epsilon / (tau + 1);
  const double decay = std::exp(-x);
  return -std::expm1(-x) / (1 + (k - 1) * decay);
}

std::vector<double> AssignmentDistribution(int true_cluster, double epsilon,
                                           int tau, int k) {
  const double p = RandomizedResponseTruthProbability(epsilon, tau, k);
  std::vector<double> dist(static_cast<size_t>(k), (1 - p) / k);
  dist[true_cluster] += p;
  return dist;
}

absl::StatusOr<BudgetLedger> HybridBudgetLedger(const KMeansConfig& cfg) {
  const double md = cfg.m() * cfg.dim();
  BudgetLedger ledger;
  ledger.entries = {
      {"tcm", "noisy count (sensitivity 1, scale b_T)", cfg.tau(),
       1.0 / cfg.b_t()},
      {"tcm", "noisy sum (sensitivity m d, scale b_T)", cfg.tau(),
       md / cfg.b_t()},
      {"lm", "noised report (sensitivity m d, scale b_L)", 1, md / cfg.b_l()},
      {"lm", "randomized-response assignment", cfg.tau(),
       cfg.epsilon() / (cfg.tau() + 1)},
  };
  for (const BudgetEntry& e : ledger.entries) {
    const double spent = e.repetitions * e.epsilon_each;
    (e.group == "tcm" ? ledger.tcm_total : ledger.lm_total) += spent;
  }
  if (std::isfinite(cfg.epsilon()) &&
      (!NearlyEqual(ledger.tcm_total, cfg.epsilon()) ||
       !NearlyEqual(ledger.lm_total, cfg.epsilon()))) {
    return absl::InternalError(absl::StrCat(
        "budget mismatch: TCM spends ", ledger.tcm_total, ", LM spends ",
        ledger.lm_total, ", expected ", cfg.epsilon()));
  }
  return ledger;
}

absl::StatusOr<ClusteringResult> KmeansHybrid(const PointSet& tcm_data,
                                              const PointSet& lm_data,
                                              const KMeansConfig& cfg,
                                              const SeededRng& trial) {
  if (absl::Status s = CheckData(tcm_data, cfg, "TCM data"); !s.ok()) return s;
  if (absl::Status s = CheckData(lm_data, cfg, "LM data"); !s.ok()) return s;
  const int dim = cfg.dim();
  const int k = cfg.k();
  const double s_t_sq_query = 2 * cfg.b_t() * cfg.b_t();
  const double s_l_sq = 2 * cfg.b_l() * cfg.b_l();

  Centers centers = InitialCenters(cfg, trial);
  const std::vector<double> reports = NoisyReports(lm_data, cfg, trial);
  const SeededRng assignment_streams = trial.Derive(streams::kAssignment);
  const SeededRng curator_streams = trial.Derive(streams::kCuratorNoise);

  for (int t = 0; t < cfg.tau(); ++t) {
    ClusterSums tcm = SumByNearest(tcm_data, centers, k);
    SeededRng curator = curator_streams.Derive(static_cast<uint64_t>(t));
    NoisifyTcm(tcm, cfg, curator);
    SeededRng assignment = assignment_streams.Derive(static_cast<uint64_t>(t));
    const ClusterSums lm =
        SumByRandomizedResponse(lm_data, reports, centers, cfg, assignment);

    for (int j = 0; j < k; ++j) {
      const double noisy_nt = tcm.counts[j];
      const double n_l = lm.counts[j];
      std::span<double> center = CenterOf(centers, j, dim);
      if (n_l == 0 && !(noisy_nt > 0)) continue;
      const double nt = std::max(noisy_nt, kCountFloor);
      double w = 1.0;
      if (n_l > 0) {
        const double s_t_sq = cfg.merge() == MergeVariance::kMeanNoise
                                  ? s_t_sq_query / (nt * nt)
                                  : s_t_sq_query;
        w = PwhWeight(nt / (nt + n_l), nt + n_l, s_t_sq, s_l_sq);
        if (!std::isfinite(w)) continue;
      }
      for (int a = 0; a < dim; ++a) {
        const double mu_t = tcm.sums[j * dim + a] / nt;
        const double mu_l = n_l > 0 ? lm.sums[j * dim + a] / n_l : 0.0;
        const double merged = w == 1.0 ? mu_t : w * mu_t + (1 - w) * mu_l;
        if (std::isfinite(merged)) center[a] = merged;
      }
      ClampCenter(center, cfg.m());
    }
  }

  // Report the WCSS of the union of both groups' true data.
  std::vector<double> all = tcm_data.coords();
  all.insert(all.end(), lm_data.coords().begin(), lm_data.coords().end());
  absl::StatusOr<PointSet> union_set = PointSet::Create(dim, std::move(all));
  if (!union_set.ok()) return union_set.status();
  return Finish(std::move(centers), *union_set, cfg.tau());
}

absl::StatusOr<ClusteringResult> KmeansTcmBaseline(const PointSet& tcm_data,
                                                   const KMeansConfig& cfg,
                                                   const SeededRng& trial) {
  if (absl::Status s = CheckData(tcm_data, cfg, "TCM data"); !s.ok()) return s;
  const int dim = cfg.dim();
  Centers centers = InitialCenters(cfg, trial);
  const SeededRng curator_streams = trial.Derive(streams::kCuratorNoise);
  for (int t = 0; t < cfg.tau(); ++t) {
    ClusterSums tcm = SumByNearest(tcm_data, centers, cfg.k());
    SeededRng curator = curator_streams.Derive(static_cast<uint64_t>(t));
    NoisifyTcm(tcm, cfg, curator);
    for (int j = 0; j < cfg.k(); ++j) {
      if (!(tcm.counts[j] > 0)) continue;
      std::span<double> center = CenterOf(centers, j, dim);
      for (int a = 0; a < dim; ++a) {
        center[a] = tcm.sums[j * dim + a] / tcm.counts[j];
      }
      ClampCenter(center, cfg.m());
    }
  }
  return Finish(std::move(centers), tcm_data, cfg.tau());
}

absl::StatusOr<ClusteringResult> KmeansLmBaseline(const PointSet& all_data,
                                                  const KMeansConfig& cfg,
                                                  const SeededRng& trial) {
  if (absl::Status s = CheckData(all_data, cfg, "data"); !s.ok()) return s;
  const int dim = cfg.dim();
  Centers centers = InitialCenters(cfg, trial);
  const std::vector<double> reports = NoisyReports(all_data, cfg, trial);
  const SeededRng assignment_streams = trial.Derive(streams::kAssignment);
  for (int t = 0; t < cfg.tau(); ++t) {
    SeededRng assignment = assignment_streams.Derive(static_cast<uint64_t>(t));
    const ClusterSums lm =
        SumByRandomizedResponse(all_data, reports, centers, cfg, assignment);
    for (int j = 0; j < cfg.k(); ++j) {
      if (lm.counts[j] == 0) continue;
      std::span<double> center = CenterOf(centers, j, dim);
      for (int a = 0; a < dim; ++a) {
        center[a] = lm.sums[j * dim + a] / lm.counts[j];
      }
      ClampCenter(center, cfg.m());
    }
  }
  return Finish(std::move(centers), all_data, cfg.tau());
}

absl::StatusOr<ClusteringResult> Lloyd(const PointSet& data,
                                       const KMeansConfig& cfg,
                                       const SeededRng& trial) {
  if (absl::Status s = CheckData(data, cfg, "data"); !s.ok()) return s;
  const int dim = cfg.dim();
  Centers centers = InitialCenters(cfg, trial);
  for (int t = 0; t < cfg.tau(); ++t) {
    const ClusterSums exact = SumByNearest(data, centers, cfg.k());
    for (int j = 0; j < cfg.k(); ++j) {
      if (exact.counts[j] == 0) continue;
      std::span<double> center = CenterOf(centers, j, dim);
      for (int a = 0; a < dim; ++a) {
        center[a] = exact.sums[j * dim + a] / exact.counts[j];
      }
    }
  }
  return Finish(std::move(centers), data, cfg.tau());
}

double Wcss(const PointSet& data, std::span<const double> centers) {
  const int dim = data.dim();
  const int k = static_cast<int>(centers.size()) / dim;
  double total = 0;
  for (int64_t i = 0; i < data.size(); ++i) {
    const auto x = data.point(i);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      double dist = 0;
      for (int a = 0; a < dim; ++a) {
        const double diff = x[a] - centers[j * dim + a];
        dist += diff * diff;
      }
      best = std::min(best, dist);
    }
    total += best;
  }
  return total;
}

absl::StatusOr<PointSet> GaussianBlobs(std::span<const double> centers,
                                       int dim, double sigma,
                                       int64_t points_per_cluster, double m,
                                       SeededRng& rng) {
  if (dim < 1 || centers.empty() || centers.size() % dim != 0) {
    return absl::InvalidArgumentError("centers must be a nonempty k x d array");
  }
  if (!(sigma >= 0) || points_per_cluster < 1 || !(m > 0)) {
    return absl::InvalidArgumentError(
        "need sigma >= 0, points_per_cluster >= 1 and m > 0");
  }
  const size_t k = centers.size() / dim;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coords;
  coords.reserve(k * static_cast<size_t>(points_per_cluster * dim));
  for (size_t j = 0; j < k; ++j) {
    for (int64_t i = 0; i < points_per_cluster; ++i) {
      for (int a = 0; a < dim; ++a) {
        coords.push_back(
            std::clamp(centers[j * dim + a] + sigma * normal(rng), 0.0, m));
      }
    }
  }
  return PointSet::Create(dim, std::move(coords));
}

absl::StatusOr<PointSet> Gauss4(int64_t points_per_cluster, SeededRng& rng) {
  static constexpr double kCenters[] = {0.25, 0.25, 0.25, 0.75,
                                        0.75, 0.25, 0.75, 0.75};
  return GaussianBlobs(kCenters, 2, 0.028, points_per_cluster, 1.0, rng);
}

absl::StatusOr<std::vector<KMeansExperimentRow>> RunKMeansExperiment(
    const KMeansExperimentSpec& spec) {
  if (spec.taus.empty() || spec.trials < 1) {
    return absl::InvalidArgumentError("need at least one tau and one trial");
  }
  if (!(spec.tcm_fraction > 0 && spec.tcm_fraction < 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "TCM fraction must lie in (0,1), got ", spec.tcm_fraction));
  }
  std::vector<KMeansConfig> configs;
  for (int tau : spec.taus) {
    absl::StatusOr<KMeansConfig> cfg =
        KMeansConfig::Create(4, tau, spec.epsilon, 2, 1.0, spec.merge);
    if (!cfg.ok()) return cfg.status();
    configs.push_back(*cfg);
  }

  // [trial][tau][algorithm]: hybrid, tcm, lm, lloyd.
  constexpr int kAlgorithms = 4;
  const size_t per_trial = configs.size() * kAlgorithms;
  std::vector<double> wcss(static_cast<size_t>(spec.trials) * per_trial);
  std::vector<absl::Status> errors(static_cast<size_t>(spec.trials));
  const SeededRng root(spec.seed);

  ParallelFor(spec.trials, spec.threads, [&](int64_t trial_index) {
    const SeededRng trial = root.Derive(static_cast<uint64_t>(trial_index));
    SeededRng data_rng = trial.Derive(streams::kData);
    absl::StatusOr<PointSet> all = Gauss4(spec.points_per_cluster, data_rng);
    if (!all.ok()) {
      errors[trial_index] = all.status();
      return;
    }
    const int64_t n = all->size();
    const int64_t n_tcm = std::clamp<int64_t>(
        std::llround(spec.tcm_fraction * static_cast<double>(n)), 1, n - 1);
    std::vector<int64_t> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    SeededRng partition_rng = trial.Derive(streams::kPartition);
    std::shuffle(order.begin(), order.end(), partition_rng);
    std::vector<double> tcm_coords;
    std::vector<double> lm_coords;
    tcm_coords.reserve(static_cast<size_t>(n_tcm * 2));
    lm_coords.reserve(static_cast<size_t>((n - n_tcm) * 2));
    for (int64_t r = 0; r < n; ++r) {
      auto& dst = r < n_tcm ? tcm_coords : lm_coords;
      const auto x = all->point(order[r]);
      dst.insert(dst.end(), x.begin(), x.end());
    }
    const PointSet tcm = *PointSet::Create(2, std::move(tcm_coords));
    const PointSet lm = *PointSet::Create(2, std::move(lm_coords));

    for (size_t c = 0; c < configs.size(); ++c) {
      const SeededRng alg =
          trial.Derive(kAlgorithmStreams + static_cast<uint64_t>(configs[c].tau()));
      absl::StatusOr<ClusteringResult> results[kAlgorithms] = {
          KmeansHybrid(tcm, lm, configs[c], alg),
          KmeansTcmBaseline(tcm, configs[c], alg),
          KmeansLmBaseline(*all, configs[c], alg),
          Lloyd(*all, configs[c], alg),
      };
      for (int a = 0; a < kAlgorithms; ++a) {
        if (!results[a].ok()) {
          errors[trial_index] = results[a].status();
          return;
        }
        wcss[trial_index * per_trial + c * kAlgorithms + a] =
            Wcss(*all, results[a]->centers);
      }
    }
  });
  for (const absl::Status& s : errors) {
    if (!s.ok()) return s;
  }

  std::vector<KMeansExperimentRow> rows;
  const double trials = spec.trials;
  for (size_t c = 0; c < configs.size(); ++c) {
    double sum[kAlgorithms] = {0, 0, 0, 0};
    double sum_sq[kAlgorithms] = {0, 0, 0, 0};
    for (int64_t i = 0; i < spec.trials; ++i) {
      for (int a = 0; a < kAlgorithms; ++a) {
        const double v = wcss[i * per_trial + c * kAlgorithms + a];
        sum[a] += v;
        sum_sq[a] += v * v;
      }
    }
    auto se = [&](int a) {
      if (spec.trials < 2) return 0.0;
      const double mean = sum[a] / trials;
      const double var =
          std::max(0.0, (sum_sq[a] - trials * mean * mean) / (trials - 1));
      return std::sqrt(var / trials);
    };
    KMeansExperimentRow row;
    row.tau = configs[c].tau();
    row.tcm_fraction = spec.tcm_fraction;
    row.epsilon = spec.epsilon;
    row.trials = spec.trials;
    row.hybrid_wcss = sum[0] / trials;
    row.tcm_wcss = sum[1] / trials;
    row.lm_wcss = sum[2] / trials;
    row.lloyd_wcss = sum[3] / trials;
    row.hybrid_se = se(0);
    row.tcm_se = se(1);
    row.lm_se = se(2);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hybrid_dp
