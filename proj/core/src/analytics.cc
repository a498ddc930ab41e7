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

#include "hybrid_dp/analytics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hybrid_dp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Square(double x) { return x * x; }

// num / den where a zero denominator means every variance vanished and the
// weight is irrelevant; c is returned so the estimator stays proportional.
double WeightOrC(double num, double den, double c) {
  if (den == 0 || !std::isfinite(den) || !std::isfinite(num)) return c;
  return std::clamp(num / den, 0.0, 1.0);
}

HybridWeight MustWeight(double w) {
  // Callers clamp into [0, 1] first, so Create cannot fail.
  return *HybridWeight::Create(std::clamp(w, 0.0, 1.0));
}

// Root of c s_L^2 - (1-c)^2 sigma_T^2 - c (1-c) sigma_L^2 = 0 in [0, 1],
// written as 2 sigma_T^2 / (p + sqrt(D)) to avoid cancellation near
// sigma_T = sigma_L.
double CriticalC(double var_t, double var_l, double s_l_sq) {
  const double p = 2 * var_t - var_l + s_l_sq;
  const double disc = Square(var_l - s_l_sq) + 4 * s_l_sq * var_t;
  const double root = std::sqrt(disc);
  double c_crit;
  if (p + root > 0) {
    c_crit = 2 * var_t / (p + root);
  } else if (var_t != var_l) {
    c_crit = (p - root) / (2 * (var_t - var_l));
  } else {
    c_crit = 0;
  }
  return std::clamp(c_crit, 0.0, 1.0);
}

double SafeDivide(double num, double den) {
  if (den != 0) return num / den;
  if (num > 0) return kInf;
  return -kInf;
}

}  // namespace

absl::StatusOr<Setting> Setting::Create(const GroupDistribution& t,
                                        const GroupDistribution& l,
                                        const Cohort& cohort,
                                        const NoiseScales& scales) {
  return Setting(t, l, cohort, scales, std::nullopt);
}

absl::StatusOr<Setting> Setting::Calibrated(const GroupDistribution& t,
                                            const GroupDistribution& l,
                                            const Cohort& cohort,
                                            const Mechanism& mechanism) {
  const double m = std::max(t.support_max(), l.support_max());
  absl::StatusOr<NoiseScales> scales = Calibrate(mechanism, cohort, m);
  if (!scales.ok()) return scales.status();
  return Setting(t, l, cohort, *scales, mechanism);
}

double Setting::m() const { return std::max(t_.support_max(), l_.support_max()); }

double Setting::mu() const {
  return c() * t_.mean() + (1 - c()) * l_.mean();
}

MseBreakdown MseBreakdown::Of(double sampling, double privacy, double bias) {
  return MseBreakdown{sampling, privacy, bias, sampling + privacy + bias};
}

MseBreakdown MseTcmOnly(const Setting& s) {
  const double c = s.c();
  const double n = s.n();
  return MseBreakdown::Of(
      Square(1 - c) * s.t().variance() / (c * n) + (1 - c) * s.l().variance() / n,
      s.scales().s_t_sq(), Square(s.t().mean() - s.mu()));
}

MseBreakdown MseFullLm(const Setting& s) {
  return MseBreakdown::Of(0, s.scales().s_l_sq() / s.n(), 0);
}

MseBreakdown MseLmOnly(const Setting& s) {
  const double c = s.c();
  const double n = s.n();
  return MseBreakdown::Of(
      Square(c) * s.l().variance() / ((1 - c) * n) + c * s.t().variance() / n,
      s.scales().s_l_sq() / ((1 - c) * n), Square(s.l().mean() - s.mu()));
}

MseBreakdown MseHybrid(const Setting& s, HybridWeight weight) {
  const double c = s.c();
  const double n = s.n();
  const double w = weight.value();
  const double excess = Square(w - c);
  return MseBreakdown::Of(
      excess * s.t().variance() / (c * n) +
          excess * s.l().variance() / ((1 - c) * n),
      Square(w) * s.scales().s_t_sq() +
          Square(1 - w) * s.scales().s_l_sq() / ((1 - c) * n),
      Square(w * s.t().mean() + (1 - w) * s.l().mean() - s.mu()));
}

double KvhHomogeneousWeight(double c, double n, double s_t_sq, double s_l_sq,
                            double sigma_sq) {
  return WeightOrC(c * (sigma_sq + s_l_sq),
                   sigma_sq + c * (n * s_t_sq * (1 - c) + s_l_sq), c);
}

double PwhWeight(double c, double n, double s_t_sq, double s_l_sq) {
  return WeightOrC(s_l_sq, s_l_sq + (1 - c) * n * s_t_sq, c);
}

absl::StatusOr<HybridWeight> WeightKvhHomogeneous(const Setting& s) {
  if (!s.homogeneous()) {
    return absl::InvalidArgumentError(
        "groups differ in mean or variance; use WeightKvhHeterogeneous");
  }
  return MustWeight(KvhHomogeneousWeight(s.c(), s.n(), s.scales().s_t_sq(),
                                         s.scales().s_l_sq(),
                                         s.t().variance()));
}

HybridWeight WeightKvhHeterogeneous(const Setting& s) {
  const double c = s.c();
  const double n = s.n();
  const double a =
      s.t().variance() / (c * n) + s.l().variance() / ((1 - c) * n);
  const double b = s.scales().s_l_sq() / ((1 - c) * n);
  const double d_sq = Square(s.t().mean() - s.l().mean());
  return MustWeight(
      WeightOrC(c * (a + d_sq) + b, a + d_sq + s.scales().s_t_sq() + b, c));
}

HybridWeight WeightPwh(const Setting& s) {
  return MustWeight(
      PwhWeight(s.c(), s.n(), s.scales().s_t_sq(), s.scales().s_l_sq()));
}

HybridWeight WeightNwh(const Setting& s) { return MustWeight(s.c()); }

MseBreakdown MseKvh(const Setting& s) {
  return MseHybrid(s, WeightKvhHeterogeneous(s));
}

MseBreakdown MsePwh(const Setting& s) { return MseHybrid(s, WeightPwh(s)); }

MseBreakdown MseNwh(const Setting& s) { return MseHybrid(s, WeightNwh(s)); }

std::string WeightRule::ToString() const {
  switch (kind) {
    case WeightRuleKind::kKvh:
      return "kvh";
    case WeightRuleKind::kPwh:
      return "pwh";
    case WeightRuleKind::kNwh:
      return "nwh";
    case WeightRuleKind::kFixed:
      return absl::StrCat("fixed:", fixed_w);
  }
  return "unknown";
}

absl::StatusOr<WeightRule> ParseWeightRule(std::string_view text) {
  if (text == "kvh") return WeightRule{WeightRuleKind::kKvh, 0};
  if (text == "pwh") return WeightRule{WeightRuleKind::kPwh, 0};
  if (text == "nwh") return WeightRule{WeightRuleKind::kNwh, 0};
  constexpr std::string_view kFixedPrefix = "fixed:";
  if (text.substr(0, kFixedPrefix.size()) == kFixedPrefix) {
    const std::string_view number = text.substr(kFixedPrefix.size());
    double w = 0;
    const auto [end, ec] =
        std::from_chars(number.data(), number.data() + number.size(), w);
    if (ec != std::errc() || end != number.data() + number.size() ||
        number.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("cannot parse weight in '", std::string(text), "'"));
    }
    if (!(w >= 0 && w <= 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("w must lie in [0,1], got ", w));
    }
    return WeightRule{WeightRuleKind::kFixed, w};
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown weight rule '", std::string(text), "' (kvh|pwh|nwh|fixed:W)"));
}

HybridWeight ResolveWeight(const WeightRule& rule, const Setting& s) {
  switch (rule.kind) {
    case WeightRuleKind::kKvh:
      return WeightKvhHeterogeneous(s);
    case WeightRuleKind::kPwh:
      return WeightPwh(s);
    case WeightRuleKind::kNwh:
      return WeightNwh(s);
    case WeightRuleKind::kFixed:
      return MustWeight(rule.fixed_w);
  }
  return WeightNwh(s);
}

CriticalValues ComputeCriticalValues(const Setting& s) {
  const double c = s.c();
  const double n = s.n();
  const double var_t = s.t().variance();
  const double var_l = s.l().variance();
  const double s_t_sq = s.scales().s_t_sq();
  const double s_l_sq = s.scales().s_l_sq();
  const double bias_sq = Square(s.t().mean() - s.mu());

  CriticalValues out;
  out.c_crit = CriticalC(var_t, var_l, s_l_sq);
  const double den = c * (bias_sq + s_t_sq);
  out.n_crit = SafeDivide(
      c * s_l_sq - Square(1 - c) * var_t - c * (1 - c) * var_l, den);
  out.n_crit_alternate = SafeDivide(
      c * s_l_sq + (1 - c) * ((1 - c) * var_t - c * var_l), den);

  out.tcm_at_most_full_lm = MseTcmOnly(s).total <= MseFullLm(s).total;
  out.n_crit_rule_agrees =
      (c > out.c_crit && n <= out.n_crit) == out.tcm_at_most_full_lm;
  out.alternate_rule_agrees =
      (c > out.c_crit && n <= out.n_crit_alternate) == out.tcm_at_most_full_lm;

  if (s.mechanism().has_value() &&
      s.mechanism()->kind() == MechanismKind::kLaplace && s.homogeneous()) {
    const double eps = s.mechanism()->epsilon();
    const double m_sq = Square(s.m());
    const double e2s2 = Square(eps) * var_t;
    out.c_crit_laplace = e2s2 / (2 * m_sq + e2s2);
    out.n_crit_laplace =
        SafeDivide(2 * m_sq, c * (2 * c * m_sq - (1 - c) * e2s2));
    out.laplace_rule_agrees =
        (c > *out.c_crit_laplace && n >= *out.n_crit_laplace) ==
        out.tcm_at_most_full_lm;
  }
  return out;
}

absl::StatusOr<double> ImprovementR(const Setting& s, double target_mse) {
  if (!(target_mse > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("target MSE must be > 0, got ", target_mse));
  }
  return std::min(MseTcmOnly(s).total, MseFullLm(s).total) / target_mse;
}

absl::StatusOr<double> WeakImprovementR(const Setting& s, double target_mse) {
  if (!(target_mse > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("target MSE must be > 0, got ", target_mse));
  }
  return std::max(MseTcmOnly(s).total, MseFullLm(s).total) / target_mse;
}

std::string_view BetterBaseline(const Setting& s) {
  return MseTcmOnly(s).total <= MseFullLm(s).total ? "tcm" : "full_lm";
}

absl::StatusOr<bool> PwhDominanceRegion(const Setting& s) {
  if (!s.mechanism().has_value() ||
      s.mechanism()->kind() != MechanismKind::kLaplace) {
    return absl::FailedPreconditionError(
        "the PWH region predicate needs a Laplace-calibrated setting");
  }
  if (!s.homogeneous()) {
    return absl::FailedPreconditionError(
        "the PWH region predicate needs a homogeneous setting");
  }
  const double eps = s.mechanism()->epsilon();
  const double m = s.m();
  const double var = s.t().variance();
  const double c = s.c();
  if (eps * eps * var >= 2 * m * m) return true;  // eps >= sqrt(2) m / sigma
  const double c_threshold = eps * eps * var / (2 * m * m);
  if (c <= c_threshold) return true;
  const double n_threshold =
      2 * m * m * (1 + c) / (c * (2 * c * m * m - eps * eps * var));
  return s.n() < n_threshold;
}

absl::StatusOr<BoundSweepResult> KvhImprovementBoundSweep(
    const ParameterGrid& grid) {
  if (grid.epsilons.empty() || grid.cs.empty() || grid.ns.empty() ||
      grid.sigma_sqs.empty()) {
    return absl::InvalidArgumentError("every grid axis must be nonempty");
  }
  for (double eps : grid.epsilons) {
    if (!(eps > 0 && eps <= 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sweep requires eps in (0,1], got ", eps));
    }
  }
  for (double var : grid.sigma_sqs) {
    if (!(var > 0 && var <= grid.m * grid.m / 4 * (1 + kRelativeTolerance))) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sweep requires sigma^2 in (0, m^2/4], got ", var));
    }
  }

  BoundSweepResult out;
  out.min_r = kInf;
  out.max_r = -kInf;
  for (double var : grid.sigma_sqs) {
    absl::StatusOr<GroupDistribution> group = GroupDistribution::Create(
        grid.m / 2, std::min(var, grid.m * grid.m / 4), grid.m);
    if (!group.ok()) return group.status();
    for (double eps : grid.epsilons) {
      absl::StatusOr<Mechanism> mech = Mechanism::Laplace(eps);
      if (!mech.ok()) return mech.status();
      for (double c : grid.cs) {
        for (double n_real : grid.ns) {
          absl::StatusOr<Cohort> cohort =
              Cohort::Create(static_cast<int64_t>(std::llround(n_real)), c);
          if (!cohort.ok()) {
            ++out.skipped;
            continue;
          }
          absl::StatusOr<Setting> setting =
              Setting::Calibrated(*group, *group, *cohort, *mech);
          if (!setting.ok()) return setting.status();
          absl::StatusOr<double> r =
              ImprovementR(*setting, MseKvh(*setting).total);
          if (!r.ok()) return r.status();
          ++out.evaluated;
          out.min_r = std::min(out.min_r, *r);
          if (*r > out.max_r) {
            out.max_r = *r;
            out.argmax_epsilon = eps;
            out.argmax_c = c;
            out.argmax_n = setting->n();
            out.argmax_sigma_sq = var;
          }
        }
      }
    }
  }
  if (out.evaluated == 0) {
    return absl::InvalidArgumentError("no grid point forms a valid cohort");
  }
  return out;
}

}  // namespace hybrid_dp
