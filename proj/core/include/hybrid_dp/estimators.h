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

// Mean estimators over concrete samples. Noise comes from a trial stream:
// the curator draw from trial.Derive(streams::kCuratorNoise) and user i's
// local draw from trial.Derive(streams::kUserNoise).Derive(i), where TCM
// users are indexed 0..|T|-1 and LM users |T|..n-1. Every estimator run on
// the same trial stream therefore sees the same Y_T and Y_{L,i}.

#ifndef HYBRID_DP_ESTIMATORS_H_
#define HYBRID_DP_ESTIMATORS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/mechanisms.h"
#include "hybrid_dp/rng.h"

namespace hybrid_dp {

class SampleSet {
 public:
  // Values outside [0, m] are clamped; clamped_count() reports how many.
  // Fails when either group is empty or m is not positive.
  static absl::StatusOr<SampleSet> Create(std::vector<double> tcm_values,
                                          std::vector<double> lm_values,
                                          double m);

  std::span<const double> tcm_values() const { return tcm_values_; }
  std::span<const double> lm_values() const { return lm_values_; }
  double m() const { return m_; }
  int64_t clamped_count() const { return clamped_count_; }
  int64_t size() const {
    return static_cast<int64_t>(tcm_values_.size() + lm_values_.size());
  }

 private:
  SampleSet(std::vector<double> tcm_values, std::vector<double> lm_values,
            double m, int64_t clamped_count)
      : tcm_values_(std::move(tcm_values)),
        lm_values_(std::move(lm_values)),
        m_(m),
        clamped_count_(clamped_count) {}

  std::vector<double> tcm_values_;
  std::vector<double> lm_values_;
  double m_;
  int64_t clamped_count_;
};

class HybridWeight {
 public:
  static absl::StatusOr<HybridWeight> Create(double w);
  double value() const { return w_; }

 private:
  explicit HybridWeight(double w) : w_(w) {}
  double w_;
};

// Non-private (1/n) sum x_i.
double EmpiricalMean(const SampleSet& samples);

// Mean of the TCM group plus one curator draw of variance s_T^2.
double TcmOnly(const SampleSet& samples, const NoiseScales& scales,
               const SeededRng& trial);

// Every user, TCM users included, reports x_i + Y_{L,i}; returns the mean of
// all n reports.
double FullLm(const SampleSet& samples, const NoiseScales& scales,
              const SeededRng& trial);

// Mean of the LM users' noisy reports only.
double LmOnly(const SampleSet& samples, const NoiseScales& scales,
              const SeededRng& trial);

// w * tcm_estimate + (1 - w) * lm_estimate, returning the matching input
// exactly at w = 1 and w = 0.
double HybridCombine(HybridWeight w, double tcm_estimate, double lm_estimate);

// w * TcmOnly + (1 - w) * LmOnly on the same trial stream. At w = 1 and w = 0
// the result is bit-identical to TcmOnly and LmOnly respectively.
double Hybrid(const SampleSet& samples, HybridWeight w,
              const NoiseScales& scales, const SeededRng& trial);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_ESTIMATORS_H_
