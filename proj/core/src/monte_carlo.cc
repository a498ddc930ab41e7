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

#include "hybrid_dp/monte_carlo.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hybrid_dp/estimators.h"
#include "hybrid_dp/parallel.h"

namespace hybrid_dp {
namespace {

struct Moments {
  double sum = 0;
  double sum_sq = 0;
};

MseBreakdown ClosedForm(const EstimatorSpec& e, const Setting& s,
                        HybridWeight w) {
  switch (e.kind) {
    case EstimatorKind::kTcmOnly:
      return MseTcmOnly(s);
    case EstimatorKind::kFullLm:
      return MseFullLm(s);
    case EstimatorKind::kLmOnly:
      return MseLmOnly(s);
    case EstimatorKind::kHybrid:
      return MseHybrid(s, w);
  }
  return MseBreakdown{};
}

absl::StatusOr<SampleSet> DrawSamples(const DistributionPreset& tcm_preset,
                                      const DistributionPreset& lm_preset,
                                      const Cohort& cohort, double m,
                                      const SeededRng& stream) {
  SeededRng rng = stream;
  std::vector<double> tcm;
  std::vector<double> lm;
  tcm.reserve(static_cast<size_t>(cohort.tcm_size()));
  lm.reserve(static_cast<size_t>(cohort.lm_size()));
  AppendSamples(tcm_preset, cohort.tcm_size(), rng, tcm);
  AppendSamples(lm_preset, cohort.lm_size(), rng, lm);
  return SampleSet::Create(std::move(tcm), std::move(lm), m);
}

}  // namespace

std::string EstimatorSpec::Name() const {
  switch (kind) {
    case EstimatorKind::kTcmOnly:
      return "tcm_only";
    case EstimatorKind::kFullLm:
      return "full_lm";
    case EstimatorKind::kLmOnly:
      return "lm_only";
    case EstimatorKind::kHybrid:
      return absl::StrCat("hybrid[", weight.ToString(), "]");
  }
  return "unknown";
}

std::vector<EstimatorSpec> StandardEstimators() {
  return {
      {EstimatorKind::kTcmOnly, {}},
      {EstimatorKind::kFullLm, {}},
      {EstimatorKind::kLmOnly, {}},
      {EstimatorKind::kHybrid, {WeightRuleKind::kFixed, 0.0}},
      {EstimatorKind::kHybrid, {WeightRuleKind::kNwh, 0.0}},
      {EstimatorKind::kHybrid, {WeightRuleKind::kPwh, 0.0}},
      {EstimatorKind::kHybrid, {WeightRuleKind::kKvh, 0.0}},
      {EstimatorKind::kHybrid, {WeightRuleKind::kFixed, 1.0}},
  };
}

absl::StatusOr<std::vector<MonteCarloResult>> MonteCarloMse(
    const MonteCarloSpec& spec, const DistributionPreset& tcm_preset,
    const DistributionPreset& lm_preset, const Cohort& cohort,
    const Mechanism& mechanism, const std::vector<EstimatorSpec>& estimators) {
  if (spec.trials < 1 || spec.block_size < 1) {
    return absl::InvalidArgumentError("trials and block size must be >= 1");
  }
  if (estimators.empty()) {
    return absl::InvalidArgumentError("no estimators requested");
  }
  if (!tcm_preset.sampleable() || !lm_preset.sampleable()) {
    return absl::FailedPreconditionError(
        "Monte Carlo needs sampleable presets for both groups");
  }
  const Cohort effective = cohort.Effective();
  absl::StatusOr<GroupDistribution> t = ToGroup(tcm_preset);
  if (!t.ok()) return t.status();
  absl::StatusOr<GroupDistribution> l = ToGroup(lm_preset);
  if (!l.ok()) return l.status();
  absl::StatusOr<Setting> setting =
      Setting::Calibrated(*t, *l, effective, mechanism);
  if (!setting.ok()) return setting.status();
  const double m = setting->m();
  const NoiseScales& scales = setting->scales();

  std::vector<HybridWeight> weights;
  weights.reserve(estimators.size());
  for (const EstimatorSpec& e : estimators) {
    weights.push_back(ResolveWeight(e.weight, *setting));
  }

  const SeededRng root(spec.seed);
  const SeededRng data_root = root.Derive(streams::kData);
  absl::StatusOr<SampleSet> fixed_data =
      DrawSamples(tcm_preset, lm_preset, effective, m, data_root);
  if (!fixed_data.ok()) return fixed_data.status();

  const size_t k = estimators.size();
  const int64_t blocks = (spec.trials + spec.block_size - 1) / spec.block_size;
  std::vector<Moments> block_moments(static_cast<size_t>(blocks) * k);

  ParallelFor(blocks, spec.threads, [&](int64_t block) {
    Moments* out = &block_moments[static_cast<size_t>(block) * k];
    const int64_t begin = block * spec.block_size;
    const int64_t end = std::min(spec.trials, begin + spec.block_size);
    for (int64_t i = begin; i < end; ++i) {
      const SeededRng trial = root.Derive(static_cast<uint64_t>(i) + 16);
      absl::StatusOr<SampleSet> drawn =
          spec.noise_only
              ? fixed_data
              : DrawSamples(tcm_preset, lm_preset, effective, m,
                            trial.Derive(streams::kData));
      const SampleSet& data = *drawn;
      const double truth = EmpiricalMean(data);
      // Each estimator below is a pure function of (data, scales, trial), so
      // computing TCM-Only and LM-Only once and combining them reproduces
      // Hybrid() exactly.
      const double tcm = TcmOnly(data, scales, trial);
      const double lm = LmOnly(data, scales, trial);
      double full = std::numeric_limits<double>::quiet_NaN();
      for (size_t e = 0; e < k; ++e) {
        double estimate = 0;
        switch (estimators[e].kind) {
          case EstimatorKind::kTcmOnly:
            estimate = tcm;
            break;
          case EstimatorKind::kLmOnly:
            estimate = lm;
            break;
          case EstimatorKind::kFullLm:
            if (std::isnan(full)) full = FullLm(data, scales, trial);
            estimate = full;
            break;
          case EstimatorKind::kHybrid:
            estimate = HybridCombine(weights[e], tcm, lm);
            break;
        }
        const double err = estimate - truth;
        out[e].sum += err * err;
        out[e].sum_sq += err * err * err * err;
      }
    }
  });

  std::vector<MonteCarloResult> results;
  results.reserve(k);
  const double trials = static_cast<double>(spec.trials);
  for (size_t e = 0; e < k; ++e) {
    Moments total;
    for (int64_t b = 0; b < blocks; ++b) {
      total.sum += block_moments[static_cast<size_t>(b) * k + e].sum;
      total.sum_sq += block_moments[static_cast<size_t>(b) * k + e].sum_sq;
    }
    MonteCarloResult r;
    r.estimator = estimators[e].Name();
    r.w = estimators[e].kind == EstimatorKind::kHybrid
              ? weights[e].value()
              : std::numeric_limits<double>::quiet_NaN();
    r.mse = total.sum / trials;
    const double var =
        spec.trials > 1
            ? std::max(0.0, (total.sum_sq - trials * r.mse * r.mse) /
                                (trials - 1))
            : 0.0;
    r.standard_error = std::sqrt(var / trials);
    r.closed_form = ClosedForm(estimators[e], *setting, weights[e]).total;
    const double diff = r.mse - r.closed_form;
    if (r.standard_error > 0) {
      r.z = diff / r.standard_error;
    } else {
      r.z = std::abs(diff) <= kRelativeTolerance * std::abs(r.closed_form)
                ? 0.0
                : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    results.push_back(r);
  }
  return results;
}

}  // namespace hybrid_dp
