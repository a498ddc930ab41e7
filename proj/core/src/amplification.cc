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

#include "hybrid_dp/amplification.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hybrid_dp {
namespace {

// Per-group epsilon for a group whose per-user sensitivity is
// `sensitivity_scale * m / n`. Zero sensitivity gives 0; zero joint noise
// with nonzero sensitivity gives no amplification.
double GroupEpsilon(double base, double sensitivity_scale, double s_prime,
                    double factor, double m, double n) {
  if (sensitivity_scale == 0) return 0;
  if (s_prime == 0) return base;
  return factor * m * sensitivity_scale / (n * s_prime);
}

}  // namespace

absl::StatusOr<CoalitionModel> CoalitionModel::Create(
    int64_t adversarial_lm_count, const Cohort& cohort) {
  if (adversarial_lm_count < 0 || adversarial_lm_count > cohort.lm_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("|A| must lie in [0, |L|=", cohort.lm_size(), "], got ",
                     adversarial_lm_count));
  }
  return CoalitionModel(adversarial_lm_count);
}

absl::StatusOr<CoalitionModel> CoalitionModel::FromFraction(
    double fraction, const Cohort& cohort) {
  if (!(fraction >= 0 && fraction <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("adversarial fraction must lie in [0,1], got ", fraction));
  }
  return Create(static_cast<int64_t>(std::floor(
                    fraction * static_cast<double>(cohort.lm_size()))),
                cohort);
}

std::string_view BindingGroupName(BindingGroup group) {
  return group == BindingGroup::kTcm ? "tcm" : "lm";
}

double JointNoiseVariance(HybridWeight w, const Cohort& cohort,
                          const NoiseScales& scales,
                          const CoalitionModel& coalition) {
  const double wv = w.value();
  const double lm_mass = (1 - cohort.c()) * static_cast<double>(cohort.n());
  const double honest = std::max(
      0.0, lm_mass - static_cast<double>(coalition.adversarial_lm_count()));
  const double lm_coef = (1 - wv) / lm_mass;
  return wv * wv * scales.s_t_sq() + lm_coef * lm_coef * honest * scales.s_l_sq();
}

absl::StatusOr<AmplificationReport> AmplifiedEpsilonGaussian(
    HybridWeight w, const Cohort& cohort, const Mechanism& mechanism,
    const CoalitionModel& coalition, double m) {
  if (mechanism.kind() != MechanismKind::kGaussian) {
    return absl::InvalidArgumentError(
        "amplification is only defined for the Gaussian mechanism; Laplace "
        "sums do not amplify (use LaplaceNonAmplificationCertificate)");
  }
  absl::StatusOr<NoiseScales> scales = Calibrate(mechanism, cohort, m);
  if (!scales.ok()) return scales.status();

  AmplificationReport report;
  report.base_epsilon = mechanism.epsilon();
  report.s_prime_sq = JointNoiseVariance(w, cohort, *scales, coalition);
  const double s_prime = std::sqrt(report.s_prime_sq);
  const double factor = mechanism.GaussianFactor();
  const double n = static_cast<double>(cohort.n());
  const double c = cohort.c();
  const double base = report.base_epsilon;

  const double raw_tcm =
      GroupEpsilon(base, w.value() / c, s_prime, factor, m, n);
  const double raw_lm =
      GroupEpsilon(base, (1 - w.value()) / (1 - c), s_prime, factor, m, n);
  report.capped = raw_tcm > base || raw_lm > base;
  report.epsilon_tcm = std::min(raw_tcm, base);
  report.epsilon_lm = std::min(raw_lm, base);
  if (report.epsilon_tcm >= report.epsilon_lm) {
    report.epsilon_prime = report.epsilon_tcm;
    report.binding_group = BindingGroup::kTcm;
  } else {
    report.epsilon_prime = report.epsilon_lm;
    report.binding_group = BindingGroup::kLm;
  }
  report.epsilon_selected_branch =
      w.value() <= c ? report.epsilon_tcm : report.epsilon_lm;
  if (!(report.epsilon_prime <= base)) {
    return absl::InternalError("amplified epsilon exceeds the base epsilon");
  }
  return report;
}

absl::StatusOr<LaplaceCertificate> LaplaceNonAmplificationCertificate(
    int n_terms, double epsilon, double m, double x_max_over_b,
    int grid_points) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", epsilon));
  }
  if (!(m > 0) || !(x_max_over_b > 0) || grid_points < 2) {
    return absl::InvalidArgumentError(
        "certificate needs m > 0, x_max_over_b > 0 and >= 2 grid points");
  }
  LaplaceCertificate cert;
  cert.n_terms = n_terms;
  cert.b = m / epsilon;
  cert.shift = m;
  cert.limit = cert.shift / cert.b;

  const double x_max = x_max_over_b * cert.b;
  std::vector<double> xs;
  xs.reserve(4 * static_cast<size_t>(grid_points));
  const double log_lo = std::log(1e-3 * cert.b);
  const double log_hi = std::log(x_max);
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / (grid_points - 1);
    const double linear = t * x_max;
    const double logarithmic = std::exp(log_lo + t * (log_hi - log_lo));
    xs.push_back(linear);
    xs.push_back(-linear);
    xs.push_back(logarithmic);
    xs.push_back(-logarithmic);
  }

  cert.sup_log_ratio = -std::numeric_limits<double>::infinity();
  for (double x : xs) {
    absl::StatusOr<double> ratio =
        LaplaceSumPrivacyRatio(cert.b, n_terms, cert.shift, x);
    if (!ratio.ok()) return ratio.status();
    if (*ratio > cert.sup_log_ratio) {
      cert.sup_log_ratio = *ratio;
      cert.argsup_x = x;
    }
  }
  return cert;
}

absl::StatusOr<std::vector<AmplificationRow>> AmplificationSweep(
    const AmplificationSweepSpec& spec) {
  if (spec.cs.empty() || spec.adversarial_fractions.empty()) {
    return absl::InvalidArgumentError("c and fraction grids must be nonempty");
  }
  absl::StatusOr<Mechanism> mech =
      Mechanism::Gaussian(spec.epsilon, spec.delta);
  if (!mech.ok()) return mech.status();
  absl::StatusOr<GroupDistribution> group =
      GroupDistribution::Create(spec.mean, spec.variance, spec.m);
  if (!group.ok()) return group.status();

  std::vector<AmplificationRow> rows;
  rows.reserve(spec.cs.size() * spec.adversarial_fractions.size());
  for (double c : spec.cs) {
    absl::StatusOr<Cohort> cohort = Cohort::Create(spec.n, c);
    if (!cohort.ok()) return cohort.status();
    absl::StatusOr<Setting> setting =
        Setting::Calibrated(*group, *group, *cohort, *mech);
    if (!setting.ok()) return setting.status();
    const HybridWeight w = ResolveWeight(spec.weight_rule, *setting);
    for (double fraction : spec.adversarial_fractions) {
      absl::StatusOr<CoalitionModel> coalition =
          CoalitionModel::FromFraction(fraction, *cohort);
      if (!coalition.ok()) return coalition.status();
      absl::StatusOr<AmplificationReport> report =
          AmplifiedEpsilonGaussian(w, *cohort, *mech, *coalition, spec.m);
      if (!report.ok()) return report.status();
      rows.push_back(AmplificationRow{c, fraction,
                                      coalition->adversarial_lm_count(),
                                      w.value(), *report});
    }
  }
  return rows;
}

}  // namespace hybrid_dp
