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

// Named data distributions. A preset is either a scaled and shifted Beta,
// shift + scale * Beta(alpha, beta), with exact analytic moments, or a
// summary-only record that carries moments but cannot be sampled.

#ifndef HYBRID_DP_PRESETS_H_
#define HYBRID_DP_PRESETS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/rng.h"

namespace hybrid_dp {

struct DistributionPreset {
  std::string name;
  // Beta parameters; unset for summary-only presets.
  std::optional<double> alpha;
  std::optional<double> beta;
  double scale = 1.0;
  double shift = 0.0;
  // Analytic moments and support bound.
  double mean = 0;
  double variance = 0;
  double m = 1.0;
  // Population size for summary presets.
  std::optional<int64_t> n;

  bool sampleable() const { return alpha.has_value() && beta.has_value(); }
};

// shift + scale * Beta(alpha, beta) with support bound m. Fails unless the
// support [shift, shift + scale] lies inside [0, m].
absl::StatusOr<DistributionPreset> BetaPreset(std::string name, double alpha,
                                              double beta, double scale,
                                              double shift, double m);

// beta-low = Beta(10, 10), beta-mid = Beta(1, 1), beta-high = Beta(0.1, 0.1)
// on [0, 1]; uc-salary-summary carries n = 252540, m = 2349033 and
// sigma = 53254. Its mean is not published, so m / 2 stands in; the
// homogeneous formulas never read it.
absl::StatusOr<DistributionPreset> FindPreset(std::string_view name);
std::vector<std::string> PresetNames();

// Beta(1, 1) centred at 1 (support [0.5, 1.5]) moved by `offset`, with the
// support bound fixed at m = 2 for every offset.
absl::StatusOr<DistributionPreset> ShiftedUniformPreset(double offset);

absl::StatusOr<GroupDistribution> ToGroup(const DistributionPreset& preset);

// i.i.d. draws; Beta via the ratio of two Gamma draws.
absl::StatusOr<std::vector<double>> SamplePreset(
    const DistributionPreset& preset, int64_t count, SeededRng& rng);

// Same, appending into `out` without validation; preset must be sampleable.
void AppendSamples(const DistributionPreset& preset, int64_t count,
                   SeededRng& rng, std::vector<double>& out);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_PRESETS_H_
