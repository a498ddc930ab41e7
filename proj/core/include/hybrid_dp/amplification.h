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

// Privacy of the hybrid estimator's single release against adversaries who
// see only the output. The released value carries the joint noise
//   w Y_T + (1 - w) / ((1 - c) n) * sum_{i in L} Y_{L,i},
// minus whatever a coalition A of semi-honest LM users already knows.

#ifndef HYBRID_DP_AMPLIFICATION_H_
#define HYBRID_DP_AMPLIFICATION_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/analytics.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/estimators.h"
#include "hybrid_dp/mechanisms.h"

namespace hybrid_dp {

class CoalitionModel {
 public:
  // Fails unless 0 <= adversarial_lm_count <= |L|.
  static absl::StatusOr<CoalitionModel> Create(int64_t adversarial_lm_count,
                                               const Cohort& cohort);
  // |A| = floor(fraction * |L|), fraction in [0, 1].
  static absl::StatusOr<CoalitionModel> FromFraction(double fraction,
                                                     const Cohort& cohort);

  int64_t adversarial_lm_count() const { return adversarial_lm_count_; }

 private:
  explicit CoalitionModel(int64_t count) : adversarial_lm_count_(count) {}
  int64_t adversarial_lm_count_;
};

enum class BindingGroup { kTcm, kLm };
std::string_view BindingGroupName(BindingGroup group);

// Per-group guarantees come from the two per-user sensitivities of the
// non-private hybrid mean, w m / (c n) for a TCM user and
// (1 - w) m / ((1 - c) n) for an LM user. Each is capped at the base epsilon,
// since the output is a post-processing of ordinary eps-DP releases.
struct AmplificationReport {
  double base_epsilon = 0;
  double s_prime_sq = 0;
  double epsilon_tcm = 0;
  double epsilon_lm = 0;
  // The larger of the two per-group values.
  double epsilon_prime = 0;
  BindingGroup binding_group = BindingGroup::kTcm;
  // The per-group value picked by the rule "w/c branch when w <= c", which
  // is the smaller of the two.
  double epsilon_selected_branch = 0;
  // True when either per-group value hit the base-epsilon cap.
  bool capped = false;
};

// s'^2 = w^2 s_T^2 + ((1 - w) / ((1 - c) n))^2 |L \ A| s_L^2, with
// |L \ A| = (1 - c) n - |A|.
double JointNoiseVariance(HybridWeight w, const Cohort& cohort,
                          const NoiseScales& scales,
                          const CoalitionModel& coalition);

// Gaussian amplification with delta' = delta. Fails for the Laplace
// mechanism: a sum of Laplace noises does not amplify (see
// LaplaceNonAmplificationCertificate).
absl::StatusOr<AmplificationReport> AmplifiedEpsilonGaussian(
    HybridWeight w, const Cohort& cohort, const Mechanism& mechanism,
    const CoalitionModel& coalition, double m);

struct LaplaceCertificate {
  int n_terms = 0;
  // Laplace scale b = m / eps and neighbour shift m.
  double b = 0;
  double shift = 0;
  // Largest log p(x) - log p(x + shift) on the grid and where it occurred.
  double sup_log_ratio = 0;
  double argsup_x = 0;
  // shift / b = eps, the x -> infinity limit.
  double limit = 0;
};

// Scans log p(x) - log p(x + m) for the sum of n_terms Laplace(m / eps)
// noises, the noise protecting one LM user's report within the joint sum,
// on a symmetric grid reaching |x| = x_max_over_b * b. Both linear and
// logarithmic spacing are used so the far tail is covered.
absl::StatusOr<LaplaceCertificate> LaplaceNonAmplificationCertificate(
    int n_terms, double epsilon, double m, double x_max_over_b = 1e6,
    int grid_points = 4001);

struct AmplificationRow {
  double c = 0;
  double adversarial_fraction = 0;
  int64_t adversarial_count = 0;
  double w = 0;
  AmplificationReport report;
};

struct AmplificationSweepSpec {
  int64_t n = 0;
  std::vector<double> cs;
  std::vector<double> adversarial_fractions;
  double epsilon = 1.0;
  double delta = 1e-7;
  // Homogeneous data moments used by the KVH weight.
  double mean = 0;
  double variance = 0;
  double m = 1.0;
  WeightRule weight_rule;
};

// One row per (c, adversarial fraction), c-major.
absl::StatusOr<std::vector<AmplificationRow>> AmplificationSweep(
    const AmplificationSweepSpec& spec);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_AMPLIFICATION_H_
