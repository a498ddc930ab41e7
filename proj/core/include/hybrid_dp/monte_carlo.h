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

// Monte Carlo estimate of each estimator's expected squared error against
// the non-private empirical mean, next to its closed form.

#ifndef HYBRID_DP_MONTE_CARLO_H_
#define HYBRID_DP_MONTE_CARLO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/analytics.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/mechanisms.h"
#include "hybrid_dp/presets.h"

namespace hybrid_dp {

enum class EstimatorKind { kTcmOnly, kFullLm, kLmOnly, kHybrid };

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kHybrid;
  // Read only for kHybrid.
  WeightRule weight;

  // "tcm_only", "full_lm", "lm_only" or "hybrid[<rule>]".
  std::string Name() const;
};

// TCM-Only, Full-LM, LM-Only and the hybrid at w = 0, c, w_PWH, w*, 1.
std::vector<EstimatorSpec> StandardEstimators();

struct MonteCarloSpec {
  uint64_t seed = 0;
  int64_t trials = 100000;
  int threads = 1;
  // Trials are summed in blocks of this size, then blocks in order, so the
  // result does not depend on the thread count.
  int64_t block_size = 256;
  // Non-canonical debugging mode: draw the data once and resample only the
  // noise.
  bool noise_only = false;
};

struct MonteCarloResult {
  std::string estimator;
  double w = 0;  // NaN for the non-hybrid estimators.
  double mse = 0;
  // Standard error of `mse`: sqrt(sample variance of squared errors / trials).
  double standard_error = 0;
  double closed_form = 0;
  // (mse - closed_form) / standard_error; 0 when both vanish.
  double z = 0;
};

// Each trial draws fresh TCM and LM samples from the presets and fresh noise.
// Group sizes come from cohort.Effective(); scales are calibrated on that
// effective cohort with m = max of the presets' bounds, and the closed forms
// use the same effective setting.
absl::StatusOr<std::vector<MonteCarloResult>> MonteCarloMse(
    const MonteCarloSpec& spec, const DistributionPreset& tcm_preset,
    const DistributionPreset& lm_preset, const Cohort& cohort,
    const Mechanism& mechanism, const std::vector<EstimatorSpec>& estimators);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_MONTE_CARLO_H_
