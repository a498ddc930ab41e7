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

#include "hybrid_dp/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace hybrid_dp {

std::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kLaplace:
      return "laplace";
    case MechanismKind::kGaussian:
      return "gaussian";
  }
  return "unknown";
}

absl::StatusOr<MechanismKind> ParseMechanismKind(std::string_view name) {
  if (name == "laplace") return MechanismKind::kLaplace;
  if (name == "gaussian") return MechanismKind::kGaussian;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism '", std::string(name), "' (laplace|gaussian)"));
}

absl::StatusOr<Mechanism> Mechanism::Create(MechanismKind kind,
                                            PrivacyParams params) {
  if (kind == MechanismKind::kGaussian && !(params.delta() > 0)) {
    return absl::InvalidArgumentError(
        "delta must be > 0 for the Gaussian mechanism");
  }
  return Mechanism(kind, params);
}

absl::StatusOr<Mechanism> Mechanism::Laplace(double epsilon) {
  absl::StatusOr<PrivacyParams> params = PrivacyParams::Create(epsilon, 0.0);
  if (!params.ok()) return params.status();
  return Create(MechanismKind::kLaplace, *params);
}

absl::StatusOr<Mechanism> Mechanism::Gaussian(double epsilon, double delta) {
  absl::StatusOr<PrivacyParams> params = PrivacyParams::Create(epsilon, delta);
  if (!params.ok()) return params.status();
  return Create(MechanismKind::kGaussian, *params);
}

double Mechanism::GaussianFactor() const {
  return std::sqrt(2.0 * std::log(1.25 / params_.delta()));
}

bool Mechanism::OutsideClassicGaussianRange() const {
  return kind_ == MechanismKind::kGaussian && params_.epsilon() > 1.0;
}

absl::StatusOr<NoiseScales> NoiseScales::Create(MechanismKind kind,
                                                double s_t_sq, double s_l_sq) {
  if (!std::isfinite(s_t_sq) || s_t_sq < 0 || !std::isfinite(s_l_sq) ||
      s_l_sq < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise variances must be finite and >= 0, got s_T^2=",
                     s_t_sq, " s_L^2=", s_l_sq));
  }
  return NoiseScales(kind, s_t_sq, s_l_sq);
}

absl::StatusOr<NoiseScales> Calibrate(const Mechanism& mechanism,
                                      const Cohort& cohort, double m) {
  if (!std::isfinite(m) || !(m > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("m must be finite and > 0, got ", m));
  }
  const double eps = mechanism.epsilon();
  const double tcm_users = cohort.c() * static_cast<double>(cohort.n());
  const double user_sensitivity = m;
  const double mean_sensitivity = m / tcm_users;
  switch (mechanism.kind()) {
    case MechanismKind::kLaplace: {
      const double b_t = mean_sensitivity / eps;
      const double b_l = user_sensitivity / eps;
      return NoiseScales::Create(mechanism.kind(), 2.0 * b_t * b_t,
                                 2.0 * b_l * b_l);
    }
    case MechanismKind::kGaussian: {
      const double factor = mechanism.GaussianFactor();
      const double s_t = factor * mean_sensitivity / eps;
      const double s_l = factor * user_sensitivity / eps;
      return NoiseScales::Create(mechanism.kind(), s_t * s_t, s_l * s_l);
    }
  }
  return absl::InternalError("unhandled mechanism kind");
}

double SampleLaplace(double b, SeededRng& rng) {
  if (b == 0) return 0.0;
  std::exponential_distribution<double> exponential(1.0);
  const double e1 = exponential(rng);
  const double e2 = exponential(rng);
  return b * (e1 - e2);
}

double SampleNoise(const NoiseScales& scales, NoiseTarget target,
                   SeededRng& rng) {
  const double variance =
      target == NoiseTarget::kCurator ? scales.s_t_sq() : scales.s_l_sq();
  if (variance == 0) return 0.0;
  switch (scales.kind()) {
    case MechanismKind::kLaplace:
      return SampleLaplace(std::sqrt(variance / 2.0), rng);
    case MechanismKind::kGaussian: {
      std::normal_distribution<double> normal(0.0, std::sqrt(variance));
      return normal(rng);
    }
  }
  return 0.0;
}

absl::StatusOr<double> LaplaceSumLogDensity(double x, double b, int n_terms) {
  if (!std::isfinite(b) || !(b > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale b must be > 0, got ", b));
  }
  if (n_terms < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("n_terms must be >= 1, got ", n_terms));
  }
  if (!std::isfinite(x)) {
    return -std::numeric_limits<double>::infinity();
  }
  const int k = n_terms - 1;
  const double z = std::abs(x) / b;
  const double log_two = std::log(2.0);
  const double normalizer = -static_cast<double>(n_terms) * log_two -
                            std::log(b) -
                            std::lgamma(static_cast<double>(n_terms));

  if (z == 0.0) {
    // Only the j = k term of z^k S(z) survives.
    double log_coef = 0.0;
    for (int j = 0; j < k; ++j) {
      log_coef += std::log(static_cast<double>(k + j + 1) *
                           static_cast<double>(k - j) /
                           static_cast<double>(j + 1));
    }
    return log_coef - k * log_two + normalizer;
  }

  // Terms of z^k S(z): log coef_j - j ln 2 + (k - j) ln z.
  const double log_z = std::log(z);
  std::vector<double> terms(static_cast<size_t>(n_terms));
  double log_coef = 0.0;
  for (int j = 0; j <= k; ++j) {
    terms[j] = log_coef - j * log_two + (k - j) * log_z;
    if (j < k) {
      log_coef += std::log(static_cast<double>(k + j + 1) *
                           static_cast<double>(k - j) /
                           static_cast<double>(j + 1));
    }
  }
  const double peak = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum) - z + normalizer;
}

absl::StatusOr<double> LaplaceSumPrivacyRatio(double b, int n_terms,
                                              double shift, double x) {
  if (!(shift > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("shift must be > 0, got ", shift));
  }
  absl::StatusOr<double> at_x = LaplaceSumLogDensity(x, b, n_terms);
  if (!at_x.ok()) return at_x.status();
  absl::StatusOr<double> at_shifted = LaplaceSumLogDensity(x + shift, b, n_terms);
  if (!at_shifted.ok()) return at_shifted.status();
  return *at_x - *at_shifted;
}

}  // namespace hybrid_dp
