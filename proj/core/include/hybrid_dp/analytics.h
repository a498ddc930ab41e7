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

// Closed-form expected squared errors of the baseline and hybrid estimators,
// their weightings, critical values and relative improvements.
//
// Every MSE is measured against the non-private empirical mean and is split
// into excess sampling, privacy and bias components. Inside formulas n is a
// real number.

#ifndef HYBRID_DP_ANALYTICS_H_
#define HYBRID_DP_ANALYTICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/estimators.h"
#include "hybrid_dp/mechanisms.h"

namespace hybrid_dp {

// The full parameter tuple: both group distributions, the cohort and the
// noise variances. mechanism() is set when the scales came from Calibrate.
class Setting {
 public:
  // Explicit noise variances; no mechanism attached.
  static absl::StatusOr<Setting> Create(const GroupDistribution& t,
                                        const GroupDistribution& l,
                                        const Cohort& cohort,
                                        const NoiseScales& scales);

  // Scales calibrated with m = max(m_T, m_L).
  static absl::StatusOr<Setting> Calibrated(const GroupDistribution& t,
                                            const GroupDistribution& l,
                                            const Cohort& cohort,
                                            const Mechanism& mechanism);

  const GroupDistribution& t() const { return t_; }
  const GroupDistribution& l() const { return l_; }
  const Cohort& cohort() const { return cohort_; }
  const NoiseScales& scales() const { return scales_; }
  const std::optional<Mechanism>& mechanism() const { return mechanism_; }

  double c() const { return cohort_.c(); }
  double n() const { return static_cast<double>(cohort_.n()); }
  double m() const;
  // c * mu_T + (1 - c) * mu_L.
  double mu() const;
  bool homogeneous() const { return IsHomogeneous(t_, l_); }

 private:
  Setting(const GroupDistribution& t, const GroupDistribution& l,
          const Cohort& cohort, const NoiseScales& scales,
          std::optional<Mechanism> mechanism)
      : t_(t), l_(l), cohort_(cohort), scales_(scales), mechanism_(mechanism) {}

  GroupDistribution t_;
  GroupDistribution l_;
  Cohort cohort_;
  NoiseScales scales_;
  std::optional<Mechanism> mechanism_;
};

struct MseBreakdown {
  double sampling = 0;
  double privacy = 0;
  double bias = 0;
  double total = 0;

  // total = sampling + privacy + bias.
  static MseBreakdown Of(double sampling, double privacy, double bias);
};

MseBreakdown MseTcmOnly(const Setting& s);
MseBreakdown MseFullLm(const Setting& s);
MseBreakdown MseLmOnly(const Setting& s);
MseBreakdown MseHybrid(const Setting& s, HybridWeight w);

// Scalar weight formulas. A 0/0 (every variance zero) resolves to c.
//   KVH:  c (sigma^2 + s_L^2) / (sigma^2 + c (n s_T^2 (1 - c) + s_L^2))
//   PWH:  s_L^2 / (s_L^2 + (1 - c) n s_T^2)
double KvhHomogeneousWeight(double c, double n, double s_t_sq, double s_l_sq,
                            double sigma_sq);
double PwhWeight(double c, double n, double s_t_sq, double s_l_sq);

// Minimizer of MseHybrid when both groups share mean and variance. Fails on
// heterogeneous input.
absl::StatusOr<HybridWeight> WeightKvhHomogeneous(const Setting& s);

// Minimizer of MseHybrid for arbitrary group moments. With
//   A = sigma_T^2 / (c n) + sigma_L^2 / ((1 - c) n),  B = s_L^2 / ((1 - c) n),
//   D = mu_T - mu_L,
// w* = (c (A + D^2) + B) / (A + D^2 + s_T^2 + B), which always lies in [0, 1].
HybridWeight WeightKvhHeterogeneous(const Setting& s);

// Minimizer of the privacy component alone; needs no data moments.
HybridWeight WeightPwh(const Setting& s);

// w = c.
HybridWeight WeightNwh(const Setting& s);

// Each composes MseHybrid with its weight. MseKvh uses the heterogeneous
// minimizer, which coincides with the homogeneous one on homogeneous input.
MseBreakdown MseKvh(const Setting& s);
MseBreakdown MsePwh(const Setting& s);
MseBreakdown MseNwh(const Setting& s);

enum class WeightRuleKind { kKvh, kPwh, kNwh, kFixed };

struct WeightRule {
  WeightRuleKind kind = WeightRuleKind::kKvh;
  double fixed_w = 0;  // Only read for kFixed.

  std::string ToString() const;
};

// "kvh", "pwh", "nwh" or "fixed:W" with W in [0, 1].
absl::StatusOr<WeightRule> ParseWeightRule(std::string_view text);

HybridWeight ResolveWeight(const WeightRule& rule, const Setting& s);

// Thresholds on c and n separating where TCM-Only beats Full-LM. Diagnostic
// only: R and r never branch on these.
struct CriticalValues {
  double c_crit = 0;
  // Solves E_T = E_F for n with s_T^2 held fixed; E_T <= E_F iff
  // c > c_crit and n <= n_crit.
  double n_crit = 0;
  // The form with +(1-c)^2 sigma_T^2 in the numerator, kept for comparison.
  double n_crit_alternate = 0;
  // Laplace homogeneous forms eps^2 sigma^2 / (2 m^2 + eps^2 sigma^2) and
  // 2 m^2 / (c (2 c m^2 - (1 - c) eps^2 sigma^2)), where E_T <= E_F iff
  // c > c_crit and n >= n_crit_laplace. Set only for Laplace homogeneous
  // settings.
  std::optional<double> c_crit_laplace;
  std::optional<double> n_crit_laplace;

  // Ground truth: E_T <= E_F by direct evaluation.
  bool tcm_at_most_full_lm = false;
  // Whether each threshold rule reproduces the ground truth for this query.
  bool n_crit_rule_agrees = false;
  bool alternate_rule_agrees = false;
  std::optional<bool> laplace_rule_agrees;
};

CriticalValues ComputeCriticalValues(const Setting& s);

// R = min(E_T, E_F) / target and r = max(E_T, E_F) / target, from direct
// evaluation of both baselines. Fails when target <= 0.
absl::StatusOr<double> ImprovementR(const Setting& s, double target_mse);
absl::StatusOr<double> WeakImprovementR(const Setting& s, double target_mse);

// Which baseline is better: "tcm" when E_T <= E_F, otherwise "full_lm".
std::string_view BetterBaseline(const Setting& s);

// The closed-form low-relative-privacy predicate for the PWH weighting:
//   eps >= sqrt(2) m / sigma, or c <= eps^2 sigma^2 / (2 m^2), or
//   (c > eps^2 sigma^2 / (2 m^2) and n < 2 m^2 (1 + c) / (c (2 c m^2 -
//   eps^2 sigma^2))).
// Requires a Laplace-calibrated homogeneous setting.
absl::StatusOr<bool> PwhDominanceRegion(const Setting& s);

// Grid for the KVH bound sweep. Groups are homogeneous with mean m / 2.
struct ParameterGrid {
  std::vector<double> epsilons;
  std::vector<double> cs;
  std::vector<double> ns;
  std::vector<double> sigma_sqs;
  double m = 1.0;
};

struct BoundSweepResult {
  double min_r = 0;
  double max_r = 0;
  // Arguments of max_r.
  double argmax_epsilon = 0;
  double argmax_c = 0;
  double argmax_n = 0;
  double argmax_sigma_sq = 0;
  int64_t evaluated = 0;
  // Grid points whose cohort is invalid (c n < 1 or (1 - c) n < 1).
  int64_t skipped = 0;
};

// Min and max of R(E_KVH) over a Laplace grid. Fails unless every epsilon is
// in (0, 1] and every sigma^2 in (0, m^2 / 4].
absl::StatusOr<BoundSweepResult> KvhImprovementBoundSweep(
    const ParameterGrid& grid);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_ANALYTICS_H_
