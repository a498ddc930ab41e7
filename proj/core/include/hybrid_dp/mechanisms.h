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

// Noise calibration and sampling for the Laplace and Gaussian mechanisms as
// used by both trust groups, plus the closed-form density of a sum of
// i.i.d. Laplace variables.

#ifndef HYBRID_DP_MECHANISMS_H_
#define HYBRID_DP_MECHANISMS_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/rng.h"

namespace hybrid_dp {

enum class MechanismKind { kLaplace, kGaussian };

std::string_view MechanismName(MechanismKind kind);
absl::StatusOr<MechanismKind> ParseMechanismKind(std::string_view name);

class Mechanism {
 public:
  // Gaussian requires delta > 0.
  static absl::StatusOr<Mechanism> Create(MechanismKind kind,
                                          PrivacyParams params);
  static absl::StatusOr<Mechanism> Laplace(double epsilon);
  static absl::StatusOr<Mechanism> Gaussian(double epsilon, double delta);

  MechanismKind kind() const { return kind_; }
  const PrivacyParams& params() const { return params_; }
  double epsilon() const { return params_.epsilon(); }
  double delta() const { return params_.delta(); }

  // sqrt(2 ln(1.25 / delta)); only defined for the Gaussian mechanism.
  double GaussianFactor() const;

  // The classic Gaussian constant is only proven for epsilon <= 1. Larger
  // epsilons are accepted but callers should surface a warning.
  bool OutsideClassicGaussianRange() const;

 private:
  Mechanism(MechanismKind kind, PrivacyParams params)
      : kind_(kind), params_(params) {}

  MechanismKind kind_;
  PrivacyParams params_;
};

// Variances of the curator noise Y_T (added to the TCM group mean) and of each
// per-user report noise Y_{L,i}.
class NoiseScales {
 public:
  static absl::StatusOr<NoiseScales> Create(MechanismKind kind, double s_t_sq,
                                            double s_l_sq);

  MechanismKind kind() const { return kind_; }
  double s_t_sq() const { return s_t_sq_; }
  double s_l_sq() const { return s_l_sq_; }

 private:
  NoiseScales(MechanismKind kind, double s_t_sq, double s_l_sq)
      : kind_(kind), s_t_sq_(s_t_sq), s_l_sq_(s_l_sq) {}

  MechanismKind kind_;
  double s_t_sq_;
  double s_l_sq_;
};

// Neighbouring datasets differ in one user's value, which lies in [0, m].
// The curator releases the mean of c*n values (sensitivity m / (c n)); each
// local user releases its own value (sensitivity m).
//
//   Laplace:  s_T^2 = 2 m^2 / (c^2 n^2 eps^2),   s_L^2 = 2 m^2 / eps^2
//   Gaussian: s_T = sqrt(2 ln(1.25/delta)) m / (c n eps),
//             s_L = sqrt(2 ln(1.25/delta)) m / eps
absl::StatusOr<NoiseScales> Calibrate(const Mechanism& mechanism,
                                      const Cohort& cohort, double m);

enum class NoiseTarget { kCurator, kPerUser };

// One zero-mean draw with variance s_T^2 (kCurator) or s_L^2 (kPerUser) from
// the mechanism's distribution. Zero variance yields exactly 0.
double SampleNoise(const NoiseScales& scales, NoiseTarget target,
                   SeededRng& rng);

// Laplace(b) draw (variance 2 b^2); b == 0 yields 0.
double SampleLaplace(double b, SeededRng& rng);

// log p(x) where p is the density of the sum of n_terms i.i.d. Laplace(b)
// variables. Uses the half-integer Bessel closed form
//   p(x) = z^{n-1} e^{-z} S(z) / (2^n b Gamma(n)),   z = |x| / b,
//   S(z) = sum_{j=0}^{n-1} (n-1+j)! / (j! (n-1-j)!) (2z)^{-j},
// evaluated in log space, so |x| / b in the tens of thousands is safe.
absl::StatusOr<double> LaplaceSumLogDensity(double x, double b, int n_terms);

// log p(x) - log p(x + shift) for the same density. Tends to shift / b as
// x -> infinity, which is the supremum: a sum of Laplace noises gives no
// amplification over a single one.
absl::StatusOr<double> LaplaceSumPrivacyRatio(double b, int n_terms,
                                              double shift, double x);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_MECHANISMS_H_
