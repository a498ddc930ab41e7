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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hybrid_dp {
namespace {

int64_t ClampInPlace(std::vector<double>& values, double m) {
  int64_t clamped = 0;
  for (double& v : values) {
    const double bounded = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, m);
    if (bounded != v || std::isnan(v)) ++clamped;
    v = bounded;
  }
  return clamped;
}

double Sum(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double UserNoise(const NoiseScales& scales, const SeededRng& user_streams,
                 uint64_t user) {
  SeededRng rng = user_streams.Derive(user);
  return SampleNoise(scales, NoiseTarget::kPerUser, rng);
}

// Sum over LM users of x_i + Y_{L,i}; LM user j has global index |T| + j.
double NoisyLmSum(const SampleSet& samples, const NoiseScales& scales,
                  const SeededRng& trial) {
  const SeededRng user_streams = trial.Derive(streams::kUserNoise);
  const uint64_t offset = samples.tcm_values().size();
  double sum = 0.0;
  const auto lm = samples.lm_values();
  for (size_t j = 0; j < lm.size(); ++j) {
    sum += lm[j] + UserNoise(scales, user_streams, offset + j);
  }
  return sum;
}

}  // namespace

absl::StatusOr<SampleSet> SampleSet::Create(std::vector<double> tcm_values,
                                            std::vector<double> lm_values,
                                            double m) {
  if (!std::isfinite(m) || !(m > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("m must be finite and > 0, got ", m));
  }
  if (tcm_values.empty() || lm_values.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("both groups must be nonempty, got |T|=",
                     tcm_values.size(), " |L|=", lm_values.size()));
  }
  const int64_t clamped =
      ClampInPlace(tcm_values, m) + ClampInPlace(lm_values, m);
  return SampleSet(std::move(tcm_values), std::move(lm_values), m, clamped);
}

absl::StatusOr<HybridWeight> HybridWeight::Create(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("w must lie in [0,1], got ", w));
  }
  return HybridWeight(w);
}

double EmpiricalMean(const SampleSet& samples) {
  return (Sum(samples.tcm_values()) + Sum(samples.lm_values())) /
         static_cast<double>(samples.size());
}

double TcmOnly(const SampleSet& samples, const NoiseScales& scales,
               const SeededRng& trial) {
  SeededRng curator = trial.Derive(streams::kCuratorNoise);
  const auto tcm = samples.tcm_values();
  return Sum(tcm) / static_cast<double>(tcm.size()) +
         SampleNoise(scales, NoiseTarget::kCurator, curator);
}

double FullLm(const SampleSet& samples, const NoiseScales& scales,
              const SeededRng& trial) {
  const SeededRng user_streams = trial.Derive(streams::kUserNoise);
  const auto tcm = samples.tcm_values();
  double sum = 0.0;
  for (size_t i = 0; i < tcm.size(); ++i) {
    sum += tcm[i] + UserNoise(scales, user_streams, i);
  }
  sum += NoisyLmSum(samples, scales, trial);
  return sum / static_cast<double>(samples.size());
}

double LmOnly(const SampleSet& samples, const NoiseScales& scales,
              const SeededRng& trial) {
  return NoisyLmSum(samples, scales, trial) /
         static_cast<double>(samples.lm_values().size());
}

double HybridCombine(HybridWeight w, double tcm_estimate, double lm_estimate) {
  const double weight = w.value();
  if (weight == 1.0) return tcm_estimate;
  if (weight == 0.0) return lm_estimate;
  return weight * tcm_estimate + (1.0 - weight) * lm_estimate;
}

double Hybrid(const SampleSet& samples, HybridWeight w,
              const NoiseScales& scales, const SeededRng& trial) {
  return HybridCombine(w, TcmOnly(samples, scales, trial),
                       LmOnly(samples, scales, trial));
}

}  // namespace hybrid_dp
