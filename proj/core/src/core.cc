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

#include "hybrid_dp/core.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hybrid_dp {

bool NearlyEqual(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

absl::StatusOr<GroupDistribution> GroupDistribution::Create(
    double mean, double variance, double support_max) {
  if (!std::isfinite(support_max) || !(support_max > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("m must be a finite positive support bound, got ",
                     support_max));
  }
  if (!std::isfinite(variance) || variance < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("sigma^2 must be finite and >= 0, got ", variance));
  }
  if (!std::isfinite(mean) || mean < 0 || mean > support_max) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mu must lie in [0, m] = [0, ", support_max, "], got ", mean));
  }
  const double popoviciu = support_max * support_max / 4.0;
  if (variance > popoviciu * (1.0 + kRelativeTolerance)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sigma^2 = ", variance,
                     " exceeds the Popoviciu bound m^2/4 = ", popoviciu));
  }
  return GroupDistribution(mean, variance, support_max);
}

absl::StatusOr<Cohort> Cohort::Create(int64_t n, double c) {
  if (n < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("n must be an integer >= 2, got ", n));
  }
  if (!std::isfinite(c) || !(c > 0.0 && c < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("c must lie in (0,1), got ", c));
  }
  const double nd = static_cast<double>(n);
  const double tcm = c * nd;
  const double lm = (1.0 - c) * nd;
  if (tcm < 1.0 - kRelativeTolerance) {
    return absl::InvalidArgumentError(absl::StrCat(
        "c*n must be >= 1 (nonempty TCM group), got ", tcm));
  }
  if (lm < 1.0 - kRelativeTolerance) {
    return absl::InvalidArgumentError(absl::StrCat(
        "(1-c)*n must be >= 1 (nonempty LM group), got ", lm));
  }
  return Cohort(n, c);
}

int64_t Cohort::tcm_size() const {
  const int64_t rounded = std::llround(c_ * static_cast<double>(n_));
  return std::clamp<int64_t>(rounded, 1, n_ - 1);
}

Cohort Cohort::Effective() const {
  return Cohort(n_,
                static_cast<double>(tcm_size()) / static_cast<double>(n_));
}

MixtureView MixtureOf(const GroupDistribution& t, const GroupDistribution& l,
                      const Cohort& cohort) {
  const double c = cohort.c();
  const double mu = c * t.mean() + (1.0 - c) * l.mean();
  const double second_moment =
      c * (t.mean() * t.mean() + t.variance()) +
      (1.0 - c) * (l.mean() * l.mean() + l.variance());
  // Clamp cancellation noise; a mixture variance is never negative.
  const double sigma_sq = std::max(0.0, second_moment - mu * mu);
  return MixtureView{mu, sigma_sq, std::max(t.support_max(), l.support_max())};
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    double delta) {
  if (std::isnan(epsilon) || !(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  if (!std::isfinite(delta) || delta < 0 || delta >= 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0,1), got ", delta));
  }
  return PrivacyParams(epsilon, delta);
}

bool IsHomogeneous(const GroupDistribution& t, const GroupDistribution& l) {
  return NearlyEqual(t.mean(), l.mean()) &&
         NearlyEqual(t.variance(), l.variance());
}

}  // namespace hybrid_dp
