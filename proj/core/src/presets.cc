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

#include "hybrid_dp/presets.h"

#include <cmath>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace hybrid_dp {
namespace {

constexpr int64_t kUcSalaryN = 252540;
constexpr double kUcSalaryM = 2349033;
constexpr double kUcSalarySigma = 53254;

}  // namespace

absl::StatusOr<DistributionPreset> BetaPreset(std::string name, double alpha,
                                              double beta, double scale,
                                              double shift, double m) {
  if (!(alpha > 0) || !(beta > 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Beta parameters must be > 0, got ", alpha, ", ", beta));
  }
  if (!(scale > 0) || !(m > 0) || shift < 0 ||
      shift + scale > m * (1 + kRelativeTolerance)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "support [", shift, ", ", shift + scale, "] must lie inside [0, ", m,
        "]"));
  }
  DistributionPreset p;
  p.name = std::move(name);
  p.alpha = alpha;
  p.beta = beta;
  p.scale = scale;
  p.shift = shift;
  p.m = m;
  const double ab = alpha + beta;
  p.mean = shift + scale * alpha / ab;
  p.variance = scale * scale * alpha * beta / (ab * ab * (ab + 1));
  return p;
}

absl::StatusOr<DistributionPreset> FindPreset(std::string_view name) {
  if (name == "beta-low") return BetaPreset("beta-low", 10, 10, 1, 0, 1);
  if (name == "beta-mid") return BetaPreset("beta-mid", 1, 1, 1, 0, 1);
  if (name == "beta-high") return BetaPreset("beta-high", 0.1, 0.1, 1, 0, 1);
  if (name == "uc-salary-summary") {
    DistributionPreset p;
    p.name = "uc-salary-summary";
    p.m = kUcSalaryM;
    p.mean = kUcSalaryM / 2;
    p.variance = kUcSalarySigma * kUcSalarySigma;
    p.n = kUcSalaryN;
    return p;
  }
  return absl::NotFoundError(absl::StrCat("unknown preset '", std::string(name), "' (",
                                          absl::StrJoin(PresetNames(), "|"),
                                          ")"));
}

std::vector<std::string> PresetNames() {
  return {"beta-low", "beta-mid", "beta-high", "uc-salary-summary"};
}

absl::StatusOr<DistributionPreset> ShiftedUniformPreset(double offset) {
  return BetaPreset(absl::StrCat("uniform-centred-1", offset < 0 ? "-" : "+",
                                 std::abs(offset)),
                    1, 1, 1, 0.5 + offset, 2);
}

absl::StatusOr<GroupDistribution> ToGroup(const DistributionPreset& preset) {
  return GroupDistribution::Create(preset.mean, preset.variance, preset.m);
}

void AppendSamples(const DistributionPreset& preset, int64_t count,
                   SeededRng& rng, std::vector<double>& out) {
  std::gamma_distribution<double> gamma_a(*preset.alpha, 1.0);
  std::gamma_distribution<double> gamma_b(*preset.beta, 1.0);
  for (int64_t i = 0; i < count; ++i) {
    const double x = gamma_a(rng);
    const double y = gamma_b(rng);
    // Both draws underflow together only for tiny shapes; split evenly then.
    const double beta = (x + y) > 0 ? x / (x + y) : 0.5;
    out.push_back(preset.shift + preset.scale * beta);
  }
}

absl::StatusOr<std::vector<double>> SamplePreset(
    const DistributionPreset& preset, int64_t count, SeededRng& rng) {
  if (!preset.sampleable()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "preset '", preset.name, "' carries summary statistics only"));
  }
  if (count < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("count must be >= 0, got ", count));
  }
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  AppendSamples(preset, count, rng, out);
  return out;
}

}  // namespace hybrid_dp
