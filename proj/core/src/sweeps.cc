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

#include "hybrid_dp/sweeps.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "hybrid_dp/presets.h"

namespace hybrid_dp {
namespace {

absl::StatusOr<Mechanism> MakeMechanism(MechanismKind kind, double epsilon,
                                        double delta) {
  absl::StatusOr<PrivacyParams> params = PrivacyParams::Create(epsilon, delta);
  if (!params.ok()) return params.status();
  return Mechanism::Create(kind, *params);
}

absl::StatusOr<Cohort> CohortFor(double n, double c) {
  return Cohort::Create(static_cast<int64_t>(std::llround(n)), c);
}

absl::StatusOr<double> KvhR(const Setting& s) {
  return ImprovementR(s, MseKvh(s).total);
}

}  // namespace

std::vector<double> LogSpacedN(double lo_exponent, double hi_exponent,
                               int points) {
  std::vector<double> out;
  if (points < 1) return out;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(std::round(
        std::pow(10.0, lo_exponent + t * (hi_exponent - lo_exponent))));
  }
  return out;
}

absl::StatusOr<std::vector<ImprovementRow>> SweepImprovement(
    const ImprovementSweepSpec& spec) {
  if (spec.presets.empty() || spec.ns.empty() || spec.cs.empty() ||
      spec.epsilons.empty() || spec.estimators.empty()) {
    return absl::InvalidArgumentError("every sweep axis must be nonempty");
  }
  std::vector<ImprovementRow> rows;
  for (const std::string& name : spec.presets) {
    absl::StatusOr<DistributionPreset> preset = FindPreset(name);
    if (!preset.ok()) return preset.status();
    absl::StatusOr<GroupDistribution> group = ToGroup(*preset);
    if (!group.ok()) return group.status();
    for (double eps : spec.epsilons) {
      absl::StatusOr<Mechanism> mech =
          MakeMechanism(spec.mechanism, eps, spec.delta);
      if (!mech.ok()) return mech.status();
      for (double c : spec.cs) {
        for (double n : spec.ns) {
          absl::StatusOr<Cohort> cohort = CohortFor(n, c);
          if (!cohort.ok()) continue;
          absl::StatusOr<Setting> s =
              Setting::Calibrated(*group, *group, *cohort, *mech);
          if (!s.ok()) return s.status();
          const double e_t = MseTcmOnly(*s).total;
          const double e_f = MseFullLm(*s).total;
          for (const WeightRule& rule : spec.estimators) {
            const HybridWeight w = ResolveWeight(rule, *s);
            const double e_est = MseHybrid(*s, w).total;
            absl::StatusOr<double> big_r = ImprovementR(*s, e_est);
            if (!big_r.ok()) return big_r.status();
            absl::StatusOr<double> small_r = WeakImprovementR(*s, e_est);
            if (!small_r.ok()) return small_r.status();
            rows.push_back(ImprovementRow{
                s->n(), c, eps, name, rule.ToString(), w.value(), *big_r,
                *small_r, e_t, e_f, e_est, std::string(BetterBaseline(*s))});
          }
        }
      }
    }
  }
  return rows;
}

absl::StatusOr<CsvTable> ImprovementTable(
    const std::vector<ImprovementRow>& rows) {
  CsvTable table({"n", "c", "epsilon", "preset", "estimator", "w", "R", "r",
                  "E_T", "E_F", "E_est", "regime"});
  for (const ImprovementRow& r : rows) {
    absl::Status s = table.AddRow(
        {r.n, r.c, r.epsilon, r.preset, r.estimator, r.w, r.big_r, r.small_r,
         r.e_t, r.e_f, r.e_est, r.regime});
    if (!s.ok()) return s;
  }
  return table;
}

absl::StatusOr<std::vector<SkewRow>> SweepSkew(const SkewSweepSpec& spec) {
  if (spec.ns.empty() || spec.cs.empty() || spec.epsilons.empty()) {
    return absl::InvalidArgumentError("every sweep axis must be nonempty");
  }
  std::vector<SkewRow> rows;

  // Variance skew.
  for (const std::string& tcm_name : spec.variance_presets) {
    for (const std::string& lm_name : spec.variance_presets) {
      if (tcm_name == lm_name) continue;
      absl::StatusOr<DistributionPreset> tp = FindPreset(tcm_name);
      if (!tp.ok()) return tp.status();
      absl::StatusOr<DistributionPreset> lp = FindPreset(lm_name);
      if (!lp.ok()) return lp.status();
      absl::StatusOr<GroupDistribution> t = ToGroup(*tp);
      if (!t.ok()) return t.status();
      absl::StatusOr<GroupDistribution> l = ToGroup(*lp);
      if (!l.ok()) return l.status();
      for (double eps : spec.epsilons) {
        absl::StatusOr<Mechanism> mech = Mechanism::Laplace(eps);
        if (!mech.ok()) return mech.status();
        for (double c : spec.cs) {
          for (double n : spec.ns) {
            absl::StatusOr<Cohort> cohort = CohortFor(n, c);
            if (!cohort.ok()) continue;
            absl::StatusOr<Setting> hetero =
                Setting::Calibrated(*t, *l, *cohort, *mech);
            if (!hetero.ok()) return hetero.status();
            absl::StatusOr<Setting> homo =
                Setting::Calibrated(*t, *t, *cohort, *mech);
            if (!homo.ok()) return homo.status();
            absl::StatusOr<double> r = KvhR(*hetero);
            if (!r.ok()) return r.status();
            absl::StatusOr<double> ref = KvhR(*homo);
            if (!ref.ok()) return ref.status();
            rows.push_back(SkewRow{"variance", tcm_name, lm_name, 0.0,
                                   hetero->n(), c, eps,
                                   WeightKvhHeterogeneous(*hetero).value(), *r,
                                   *ref, *r - *ref});
          }
        }
      }
    }
  }

  // Mean skew under a curator who assumes homogeneous groups.
  absl::StatusOr<DistributionPreset> base = ShiftedUniformPreset(0.0);
  if (!base.ok()) return base.status();
  const double believed_variance = base->variance;
  for (double eps : spec.epsilons) {
    absl::StatusOr<Mechanism> mech = Mechanism::Laplace(eps);
    if (!mech.ok()) return mech.status();
    for (double c : spec.cs) {
      for (double n : spec.ns) {
        absl::StatusOr<Cohort> cohort = CohortFor(n, c);
        if (!cohort.ok()) continue;
        double r_at_zero = std::nan("");
        for (double shift : spec.shifts) {
          absl::StatusOr<DistributionPreset> tp = ShiftedUniformPreset(-shift);
          if (!tp.ok()) return tp.status();
          absl::StatusOr<DistributionPreset> lp = ShiftedUniformPreset(shift);
          if (!lp.ok()) return lp.status();
          absl::StatusOr<GroupDistribution> t = ToGroup(*tp);
          if (!t.ok()) return t.status();
          absl::StatusOr<GroupDistribution> l = ToGroup(*lp);
          if (!l.ok()) return l.status();
          absl::StatusOr<Setting> s =
              Setting::Calibrated(*t, *l, *cohort, *mech);
          if (!s.ok()) return s.status();
          const double w_value = KvhHomogeneousWeight(
              s->c(), s->n(), s->scales().s_t_sq(), s->scales().s_l_sq(),
              believed_variance);
          absl::StatusOr<HybridWeight> w = HybridWeight::Create(w_value);
          if (!w.ok()) return w.status();
          absl::StatusOr<double> r = ImprovementR(*s, MseHybrid(*s, *w).total);
          if (!r.ok()) return r.status();
          if (shift == 0.0) r_at_zero = *r;
          rows.push_back(SkewRow{"mean", tp->name, lp->name, shift, s->n(), c,
                                 eps, w_value, *r, r_at_zero, *r - r_at_zero});
        }
      }
    }
  }
  return rows;
}

absl::StatusOr<CsvTable> SkewTable(const std::vector<SkewRow>& rows) {
  CsvTable table({"experiment", "tcm_preset", "lm_preset", "shift", "n", "c",
                  "epsilon", "w", "R", "R_reference", "deviation"});
  for (const SkewRow& r : rows) {
    absl::Status s =
        table.AddRow({r.experiment, r.tcm_preset, r.lm_preset, r.shift, r.n,
                      r.c, r.epsilon, r.w, r.big_r, r.reference_r, r.deviation});
    if (!s.ok()) return s;
  }
  return table;
}

absl::StatusOr<CsvTable> AmplificationTable(
    const std::vector<AmplificationRow>& rows) {
  CsvTable table({"c", "adversarial_fraction", "adversarial_count", "w",
                  "s_prime_sq", "epsilon_prime", "epsilon_tcm", "epsilon_lm",
                  "epsilon_selected_branch", "binding_group", "capped"});
  for (const AmplificationRow& r : rows) {
    absl::Status s = table.AddRow(
        {r.c, r.adversarial_fraction, r.adversarial_count, r.w,
         r.report.s_prime_sq, r.report.epsilon_prime, r.report.epsilon_tcm,
         r.report.epsilon_lm, r.report.epsilon_selected_branch,
         std::string(BindingGroupName(r.report.binding_group)),
         static_cast<int64_t>(r.report.capped ? 1 : 0)});
    if (!s.ok()) return s;
  }
  return table;
}

absl::StatusOr<CsvTable> MonteCarloTable(
    const std::vector<MonteCarloResult>& rows) {
  CsvTable table(
      {"estimator", "w", "mse", "standard_error", "closed_form", "z"});
  for (const MonteCarloResult& r : rows) {
    absl::Status s = table.AddRow(
        {r.estimator, r.w, r.mse, r.standard_error, r.closed_form, r.z});
    if (!s.ok()) return s;
  }
  return table;
}

absl::StatusOr<CsvTable> KMeansTable(
    const std::vector<KMeansExperimentRow>& rows) {
  CsvTable table({"tau", "tcm_fraction", "epsilon", "trials", "hybrid_wcss",
                  "tcm_wcss", "lm_wcss", "lloyd_wcss", "hybrid_se", "tcm_se",
                  "lm_se"});
  for (const KMeansExperimentRow& r : rows) {
    absl::Status s = table.AddRow(
        {static_cast<int64_t>(r.tau), r.tcm_fraction, r.epsilon,
         static_cast<int64_t>(r.trials), r.hybrid_wcss, r.tcm_wcss, r.lm_wcss,
         r.lloyd_wcss, r.hybrid_se, r.tcm_se, r.lm_se});
    if (!s.ok()) return s;
  }
  return table;
}

}  // namespace hybrid_dp
