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

// Closed-form parameter sweeps of relative improvement, emitted as CSV rows
// that can be recomputed from their own (n, c, eps, preset) columns.

#ifndef HYBRID_DP_SWEEPS_H_
#define HYBRID_DP_SWEEPS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hybrid_dp/analytics.h"
#include "hybrid_dp/amplification.h"
#include "hybrid_dp/csv.h"
#include "hybrid_dp/kmeans.h"
#include "hybrid_dp/mechanisms.h"
#include "hybrid_dp/monte_carlo.h"

namespace hybrid_dp {

// n values 10^lo .. 10^hi, `points` of them, evenly spaced in log10 and
// rounded to integers.
std::vector<double> LogSpacedN(double lo_exponent, double hi_exponent,
                               int points);

struct ImprovementSweepSpec {
  std::vector<std::string> presets;
  std::vector<double> ns;
  std::vector<double> cs;
  std::vector<double> epsilons;
  MechanismKind mechanism = MechanismKind::kLaplace;
  double delta = 0;
  std::vector<WeightRule> estimators;
};

struct ImprovementRow {
  double n = 0;
  double c = 0;
  double epsilon = 0;
  std::string preset;
  std::string estimator;
  double w = 0;
  double big_r = 0;
  double small_r = 0;
  double e_t = 0;
  double e_f = 0;
  double e_est = 0;
  // Better baseline: "tcm" or "full_lm".
  std::string regime;
};

// Homogeneous groups drawn from each preset. Grid points whose cohort is
// invalid are skipped. Rows are ordered preset, eps, c, n, estimator.
absl::StatusOr<std::vector<ImprovementRow>> SweepImprovement(
    const ImprovementSweepSpec& spec);
absl::StatusOr<CsvTable> ImprovementTable(
    const std::vector<ImprovementRow>& rows);

struct SkewSweepSpec {
  std::vector<double> ns;
  std::vector<double> cs;
  std::vector<double> epsilons;
  // Variance skew crosses these presets as (TCM, LM) pairs with TCM != LM.
  std::vector<std::string> variance_presets = {"beta-low", "beta-high"};
  std::vector<double> shifts = {0.0, 0.25, 0.5};
};

struct SkewRow {
  // "variance" or "mean".
  std::string experiment;
  std::string tcm_preset;
  std::string lm_preset;
  double shift = 0;
  double n = 0;
  double c = 0;
  double epsilon = 0;
  double w = 0;
  double big_r = 0;
  // Variance skew: R of the homogeneous setting whose variance equals the
  // TCM group's. Mean skew: R at shift 0.
  double reference_r = 0;
  double deviation = 0;  // big_r - reference_r
};

// Laplace throughout. Variance skew uses the heterogeneous KVH weight on
// equal-mean groups. Mean skew moves the centred uniform TCM group down and
// the LM group up by `shift` (m = 2) and uses the homogeneous KVH weight with
// the unshifted variance, as a curator who assumes equal groups would.
absl::StatusOr<std::vector<SkewRow>> SweepSkew(const SkewSweepSpec& spec);
absl::StatusOr<CsvTable> SkewTable(const std::vector<SkewRow>& rows);

absl::StatusOr<CsvTable> AmplificationTable(
    const std::vector<AmplificationRow>& rows);
absl::StatusOr<CsvTable> MonteCarloTable(
    const std::vector<MonteCarloResult>& rows);
absl::StatusOr<CsvTable> KMeansTable(
    const std::vector<KMeansExperimentRow>& rows);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_SWEEPS_H_
