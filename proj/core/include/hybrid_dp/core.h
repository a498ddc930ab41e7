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

// Domain types shared by every hybrid-model module: the per-group data
// distributions, the cohort split between trusted-curator (TCM) and local
// (LM) users, and the privacy parameters.

#ifndef HYBRID_DP_CORE_H_
#define HYBRID_DP_CORE_H_

#include <cstdint>

#include "absl/status/statusor.h"

namespace hybrid_dp {

// Relative tolerance for derived equalities (mixture identities, homogeneity
// tests, Popoviciu bound).
inline constexpr double kRelativeTolerance = 1e-9;

// True when |a - b| <= rel * max(|a|, |b|), or both are exactly zero.
bool NearlyEqual(double a, double b, double rel = kRelativeTolerance);

// Moments and support bound of one group's data-generating distribution.
// Data is supported on a subset of [0, support_max].
class GroupDistribution {
 public:
  // Fails when variance < 0, mean lies outside [0, support_max], or the
  // variance exceeds the Popoviciu bound support_max^2 / 4.
  static absl::StatusOr<GroupDistribution> Create(double mean, double variance,
                                                  double support_max);

  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double support_max() const { return support_max_; }

  friend bool operator==(const GroupDistribution&,
                         const GroupDistribution&) = default;

 private:
  GroupDistribution(double mean, double variance, double support_max)
      : mean_(mean), variance_(variance), support_max_(support_max) {}

  double mean_;
  double variance_;
  double support_max_;
};

// n users of which a fraction c opted in to the trusted curator.
//
// Closed-form analytics treat c*n as a real number. Anything that needs
// concrete group sizes (sample arrays, coalitions) uses tcm_size() and
// lm_size(), which round c*n to the nearest integer in [1, n-1];
// Effective() returns the cohort whose c matches those sizes exactly.
class Cohort {
 public:
  static absl::StatusOr<Cohort> Create(int64_t n, double c);

  int64_t n() const { return n_; }
  double c() const { return c_; }

  // |T| and |L| after rounding.
  int64_t tcm_size() const;
  int64_t lm_size() const { return n_ - tcm_size(); }

  // Same n, with c replaced by tcm_size() / n.
  Cohort Effective() const;

 private:
  Cohort(int64_t n, double c) : n_(n), c_(c) {}

  int64_t n_;
  double c_;
};

// Moments of the mixture c * D_T + (1 - c) * D_L.
struct MixtureView {
  double mu;
  double sigma_sq;
  double m;
};

// sigma_sq is the genuine mixture variance: the second moment minus mu^2.
MixtureView MixtureOf(const GroupDistribution& t, const GroupDistribution& l,
                      const Cohort& cohort);

// (epsilon, delta). delta == 0 is only meaningful for the Laplace mechanism;
// Mechanism::Create enforces that.
class PrivacyParams {
 public:
  static absl::StatusOr<PrivacyParams> Create(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

 private:
  PrivacyParams(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
};

// True when both groups share mean and variance within kRelativeTolerance.
bool IsHomogeneous(const GroupDistribution& t, const GroupDistribution& l);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_CORE_H_
