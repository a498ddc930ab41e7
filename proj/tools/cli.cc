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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "hybrid_dp/amplification.h"
#include "hybrid_dp/analytics.h"
#include "hybrid_dp/core.h"
#include "hybrid_dp/csv.h"
#include "hybrid_dp/kmeans.h"
#include "hybrid_dp/mechanisms.h"
#include "hybrid_dp/monte_carlo.h"
#include "hybrid_dp/presets.h"
#include "hybrid_dp/sweeps.h"

namespace hybrid_dp::cli {
namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
constexpr double kOracleZ = 3.0;
// Points per cluster at --scale 1.
constexpr double kFullScalePointsPerCluster = 40000;

bool IsSet(double v) { return !std::isnan(v); }

#define HDP_ASSIGN_OR_RETURN(lhs, expr)          \
  auto lhs##_or = (expr);                        \
  if (!lhs##_or.ok()) return lhs##_or.status();  \
  auto lhs = std::move(*lhs##_or)

absl::StatusOr<std::vector<double>> ParseDoubles(const std::string& text,
                                                 std::string_view flag) {
  std::vector<double> out;
  for (absl::string_view piece : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    double v = 0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(piece), &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("--", std::string(flag), ": cannot parse '",
                       std::string(piece.data(), piece.size()), "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--", std::string(flag), " needs at least one value"));
  }
  return out;
}

std::vector<std::string> ParseWords(const std::string& text) {
  std::vector<std::string> out;
  for (absl::string_view piece : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    absl::string_view word = absl::StripAsciiWhitespace(piece);
    out.emplace_back(word.data(), word.size());
  }
  return out;
}

// "A..B" (inclusive) or a comma list.
absl::StatusOr<std::vector<int>> ParseIntRange(const std::string& text,
                                               std::string_view flag) {
  std::vector<int> out;
  const std::vector<std::string> bounds = absl::StrSplit(text, "..");
  if (bounds.size() == 2) {
    int lo = 0;
    int hi = 0;
    if (!absl::SimpleAtoi(bounds[0], &lo) || !absl::SimpleAtoi(bounds[1], &hi) ||
        lo > hi) {
      return absl::InvalidArgumentError(absl::StrCat(
          "--", std::string(flag), ": expected A..B with A <= B, got '", text,
          "'"));
    }
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (const std::string& word : ParseWords(text)) {
    int v = 0;
    if (!absl::SimpleAtoi(word, &v)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "--", std::string(flag), ": cannot parse '", word, "'"));
    }
    out.push_back(v);
  }
  if (out.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--", std::string(flag), " needs at least one value"));
  }
  return out;
}

// "LO..HI:POINTS" in log10 units.
absl::StatusOr<std::vector<double>> ParseLogRange(const std::string& text) {
  const std::vector<std::string> parts = absl::StrSplit(text, ':');
  const std::vector<std::string> bounds =
      absl::StrSplit(parts.empty() ? std::string() : parts[0], "..");
  double lo = 0;
  double hi = 0;
  int points = 0;
  if (parts.size() != 2 || bounds.size() != 2 ||
      !absl::SimpleAtod(bounds[0], &lo) || !absl::SimpleAtod(bounds[1], &hi) ||
      !absl::SimpleAtoi(parts[1], &points) || points < 1 || lo > hi) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--n-range: expected LO..HI:POINTS (log10 of n), got '", text, "'"));
  }
  return LogSpacedN(lo, hi, points);
}

absl::StatusOr<DistributionPreset> LookupPreset(const std::string& name) {
  absl::StatusOr<DistributionPreset> preset = FindPreset(name);
  // An unknown name is a bad argument, not a missing file.
  if (absl::IsNotFound(preset.status())) {
    return absl::InvalidArgumentError(preset.status().message());
  }
  return preset;
}

absl::StatusOr<Mechanism> MakeMechanism(const std::string& name, double eps,
                                        double delta, std::ostream& err) {
  HDP_ASSIGN_OR_RETURN(kind, ParseMechanismKind(name));
  HDP_ASSIGN_OR_RETURN(params, PrivacyParams::Create(eps, delta));
  HDP_ASSIGN_OR_RETURN(mech, Mechanism::Create(kind, params));
  if (mech.OutsideClassicGaussianRange()) {
    err << "warning: the Gaussian calibration constant is only proven for "
           "eps <= 1; eps = "
        << eps << "\n";
  }
  return mech;
}

absl::Status Emit(const CsvTable& table, const std::string& path,
                  std::ostream& out) {
  if (path.empty()) {
    out << table.ToString();
    return absl::OkStatus();
  }
  return table.WriteFile(path);
}

void PrintBreakdown(std::ostream& out, std::string_view label,
                    const MseBreakdown& b) {
  out << std::left << std::setw(10) << label << std::right
      << " total=" << FormatDouble(b.total)
      << " sampling=" << FormatDouble(b.sampling)
      << " privacy=" << FormatDouble(b.privacy)
      << " bias=" << FormatDouble(b.bias) << "\n";
}

// ---------------------------------------------------------------- analyze

struct AnalyzeFlags {
  std::string mech = "laplace";
  int64_t n = 1000;
  double c = 0.1;
  double eps = 1.0;
  double delta = 0.0;
  double m = 1.0;
  double sigma = kUnset;
  double sigma_t = kUnset;
  double sigma_l = kUnset;
  double mu_t = kUnset;
  double mu_l = kUnset;
  std::string weight = "kvh";
  std::string out;
};

absl::Status RunAnalyze(const AnalyzeFlags& f, std::ostream& out,
                        std::ostream& err) {
  const double sigma_t = IsSet(f.sigma_t) ? f.sigma_t : f.sigma;
  const double sigma_l = IsSet(f.sigma_l) ? f.sigma_l : f.sigma;
  if (!IsSet(sigma_t) || !IsSet(sigma_l)) {
    return absl::InvalidArgumentError(
        "sigma_T and sigma_L are required: pass --sigma or both --sigma-t and "
        "--sigma-l");
  }
  if (sigma_t < 0 || sigma_l < 0) {
    return absl::InvalidArgumentError("sigma_T and sigma_L must be >= 0");
  }
  const double mu_t = IsSet(f.mu_t) ? f.mu_t : f.m / 2;
  const double mu_l = IsSet(f.mu_l) ? f.mu_l : f.m / 2;
  HDP_ASSIGN_OR_RETURN(t, GroupDistribution::Create(mu_t, sigma_t * sigma_t, f.m));
  HDP_ASSIGN_OR_RETURN(l, GroupDistribution::Create(mu_l, sigma_l * sigma_l, f.m));
  HDP_ASSIGN_OR_RETURN(cohort, Cohort::Create(f.n, f.c));
  HDP_ASSIGN_OR_RETURN(mech, MakeMechanism(f.mech, f.eps, f.delta, err));
  HDP_ASSIGN_OR_RETURN(rule, ParseWeightRule(f.weight));
  HDP_ASSIGN_OR_RETURN(s, Setting::Calibrated(t, l, cohort, mech));

  const HybridWeight w = ResolveWeight(rule, s);
  const MseBreakdown e_t = MseTcmOnly(s);
  const MseBreakdown e_f = MseFullLm(s);
  const MseBreakdown e_l = MseLmOnly(s);
  const MseBreakdown e_h = MseHybrid(s, w);
  HDP_ASSIGN_OR_RETURN(big_r, ImprovementR(s, e_h.total));
  HDP_ASSIGN_OR_RETURN(small_r, WeakImprovementR(s, e_h.total));
  const CriticalValues cv = ComputeCriticalValues(s);
  const std::string regime(BetterBaseline(s));

  out << "mechanism " << MechanismName(mech.kind()) << " eps="
      << FormatDouble(f.eps) << " delta=" << FormatDouble(f.delta)
      << " n=" << f.n << " c=" << FormatDouble(f.c)
      << " m=" << FormatDouble(f.m) << "\n";
  out << "noise     s_T^2=" << FormatDouble(s.scales().s_t_sq())
      << " s_L^2=" << FormatDouble(s.scales().s_l_sq()) << "\n";
  PrintBreakdown(out, "E_T", e_t);
  PrintBreakdown(out, "E_F", e_f);
  PrintBreakdown(out, "E_L", e_l);
  PrintBreakdown(out, absl::StrCat("E_H[", rule.ToString(), "]"), e_h);
  out << "weight    w=" << FormatDouble(w.value()) << "\n";
  out << "improve   R=" << FormatDouble(big_r) << " r=" << FormatDouble(small_r)
      << "\n";
  out << "critical  c_crit=" << FormatDouble(cv.c_crit)
      << " n_crit=" << FormatDouble(cv.n_crit)
      << " n_crit_alternate=" << FormatDouble(cv.n_crit_alternate);
  if (cv.c_crit_laplace.has_value()) {
    out << " c_crit_laplace=" << FormatDouble(*cv.c_crit_laplace)
        << " n_crit_laplace=" << FormatDouble(*cv.n_crit_laplace);
  }
  out << "\n";
  out << "rules     n_crit_rule_agrees=" << cv.n_crit_rule_agrees
      << " alternate_rule_agrees=" << cv.alternate_rule_agrees;
  if (cv.laplace_rule_agrees.has_value()) {
    out << " laplace_rule_agrees=" << *cv.laplace_rule_agrees;
  }
  out << "\n";
  out << "regime    " << regime << "\n";

  if (f.out.empty()) return absl::OkStatus();
  CsvTable table({"n", "c", "epsilon", "delta", "mechanism", "estimator", "w",
                  "E_T", "E_F", "E_L", "E_H_sampling", "E_H_privacy",
                  "E_H_bias", "E_H", "R", "r", "c_crit", "n_crit", "regime"});
  absl::Status st = table.AddRow(
      {f.n, f.c, f.eps, f.delta, std::string(MechanismName(mech.kind())),
       rule.ToString(), w.value(), e_t.total, e_f.total, e_l.total,
       e_h.sampling, e_h.privacy, e_h.bias, e_h.total, big_r, small_r,
       cv.c_crit, cv.n_crit, regime});
  if (!st.ok()) return st;
  return table.WriteFile(f.out);
}

// ------------------------------------------------------------------ sweep

struct SweepFlags {
  std::string kind = "improvement";
  std::string presets = "beta-low,beta-mid,beta-high";
  std::string mech = "laplace";
  std::string eps = "0.1,0.5,1";
  double delta = 0.0;
  std::string cs = "0.001,0.01,0.1";
  std::string ns;
  std::string n_range = "2..7:26";
  std::string weights = "kvh,pwh,nwh";
  std::string out;
};

absl::Status RunSweep(const SweepFlags& f, std::ostream& out,
                      std::ostream& err) {
  HDP_ASSIGN_OR_RETURN(eps, ParseDoubles(f.eps, "eps"));
  HDP_ASSIGN_OR_RETURN(cs, ParseDoubles(f.cs, "c"));
  std::vector<double> ns;
  if (!f.ns.empty()) {
    HDP_ASSIGN_OR_RETURN(parsed, ParseDoubles(f.ns, "n"));
    ns = std::move(parsed);
  } else {
    HDP_ASSIGN_OR_RETURN(parsed, ParseLogRange(f.n_range));
    ns = std::move(parsed);
  }

  if (f.kind == "improvement") {
    ImprovementSweepSpec spec;
    spec.presets = ParseWords(f.presets);
    for (const std::string& p : spec.presets) {
      HDP_ASSIGN_OR_RETURN(preset, LookupPreset(p));
      (void)preset;
    }
    HDP_ASSIGN_OR_RETURN(kind, ParseMechanismKind(f.mech));
    spec.mechanism = kind;
    spec.delta = f.delta;
    spec.ns = ns;
    spec.cs = cs;
    spec.epsilons = eps;
    for (const std::string& word : ParseWords(f.weights)) {
      HDP_ASSIGN_OR_RETURN(rule, ParseWeightRule(word));
      spec.estimators.push_back(rule);
    }
    if (kind == MechanismKind::kGaussian &&
        *std::max_element(eps.begin(), eps.end()) > 1) {
      err << "warning: the Gaussian calibration constant is only proven for "
             "eps <= 1\n";
    }
    HDP_ASSIGN_OR_RETURN(rows, SweepImprovement(spec));
    HDP_ASSIGN_OR_RETURN(table, ImprovementTable(rows));
    return Emit(table, f.out, out);
  }
  if (f.kind == "skew") {
    SkewSweepSpec spec;
    spec.ns = ns;
    spec.cs = cs;
    spec.epsilons = eps;
    HDP_ASSIGN_OR_RETURN(rows, SweepSkew(spec));
    HDP_ASSIGN_OR_RETURN(table, SkewTable(rows));
    return Emit(table, f.out, out);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("--kind must be improvement or skew, got '", f.kind, "'"));
}

// --------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string preset = "beta-mid";
  std::string preset_t;
  std::string preset_l;
  std::string mech = "laplace";
  int64_t n = 40;
  double c = 0.25;
  double eps = 1.0;
  double delta = 0.0;
  uint64_t seed = 1;
  int64_t trials = 100000;
  int threads = 1;
  bool noise_only = false;
  std::string out;
};

absl::StatusOr<int> RunSimulate(const SimulateFlags& f, std::ostream& out,
                                std::ostream& err) {
  HDP_ASSIGN_OR_RETURN(
      tp, LookupPreset(f.preset_t.empty() ? f.preset : f.preset_t));
  HDP_ASSIGN_OR_RETURN(
      lp, LookupPreset(f.preset_l.empty() ? f.preset : f.preset_l));
  HDP_ASSIGN_OR_RETURN(cohort, Cohort::Create(f.n, f.c));
  HDP_ASSIGN_OR_RETURN(mech, MakeMechanism(f.mech, f.eps, f.delta, err));
  if (f.trials < 2) {
    return absl::InvalidArgumentError("--trials must be >= 2");
  }
  MonteCarloSpec spec;
  spec.seed = f.seed;
  spec.trials = f.trials;
  spec.threads = f.threads;
  spec.noise_only = f.noise_only;
  HDP_ASSIGN_OR_RETURN(results, MonteCarloMse(spec, tp, lp, cohort, mech,
                                              StandardEstimators()));
  HDP_ASSIGN_OR_RETURN(table, MonteCarloTable(results));
  absl::Status st = Emit(table, f.out, out);
  if (!st.ok()) return st;

  double max_abs_z = 0;
  for (const MonteCarloResult& r : results) {
    max_abs_z = std::max(max_abs_z, std::abs(r.z));
  }
  if (f.noise_only) {
    out << "note: noise-only conditioning is a debugging mode; closed forms "
           "include data resampling\n";
  }
  out << "max |MC - closed form| = " << FormatDouble(max_abs_z)
      << " standard errors over " << results.size() << " estimators\n";
  if (max_abs_z > kOracleZ) {
    err << "oracle mismatch: some estimator is more than " << kOracleZ
        << " standard errors from its closed form\n";
    return kExitOracleMismatch;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- amplify

struct AmplifyFlags {
  std::string preset = "uc-salary-summary";
  int64_t n = 0;
  double m = kUnset;
  double sigma = kUnset;
  double mu = kUnset;
  std::string cs = "0.01,0.05,0.1,0.2,0.3,0.4,0.5";
  double eps = 1.0;
  double delta = 1e-7;
  std::string weight = "kvh";
  std::string adv_frac = "0,0.25,0.5,0.75,1";
  std::string out;
};

absl::Status RunAmplify(const AmplifyFlags& f, std::ostream& out) {
  HDP_ASSIGN_OR_RETURN(preset, LookupPreset(f.preset));
  AmplificationSweepSpec spec;
  spec.n = f.n > 0 ? f.n : preset.n.value_or(0);
  if (spec.n <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n must be given with --n; preset '", preset.name,
        "' carries no population size"));
  }
  spec.m = IsSet(f.m) ? f.m : preset.m;
  spec.variance = IsSet(f.sigma) ? f.sigma * f.sigma : preset.variance;
  spec.mean = IsSet(f.mu) ? f.mu : (IsSet(f.m) ? f.m / 2 : preset.mean);
  spec.epsilon = f.eps;
  spec.delta = f.delta;
  HDP_ASSIGN_OR_RETURN(cs, ParseDoubles(f.cs, "c"));
  HDP_ASSIGN_OR_RETURN(fracs, ParseDoubles(f.adv_frac, "adv-frac"));
  spec.cs = cs;
  spec.adversarial_fractions = fracs;
  HDP_ASSIGN_OR_RETURN(rule, ParseWeightRule(f.weight));
  spec.weight_rule = rule;
  HDP_ASSIGN_OR_RETURN(rows, AmplificationSweep(spec));
  HDP_ASSIGN_OR_RETURN(table, AmplificationTable(rows));
  return Emit(table, f.out, out);
}

// ----------------------------------------------------------------- kmeans

struct KMeansFlags {
  std::string preset = "gauss4";
  double scale = 0.1;
  double eps = 7.0;
  std::string tau = "2..10";
  int trials = 50;
  std::string tcm_frac = "0.001,0.01";
  uint64_t seed = 1;
  int threads = 1;
  std::string merge = "mean-noise";
  std::string out;
};

absl::Status RunKMeans(const KMeansFlags& f, std::ostream& out) {
  if (f.preset != "gauss4") {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown K-means preset '", f.preset, "' (gauss4)"));
  }
  if (!(f.scale > 0)) {
    return absl::InvalidArgumentError("--scale must be > 0");
  }
  if (f.trials < 1) {
    return absl::InvalidArgumentError("--trials must be >= 1");
  }
  KMeansExperimentSpec spec;
  spec.points_per_cluster = std::max<int64_t>(
      1, std::llround(f.scale * kFullScalePointsPerCluster));
  spec.epsilon = f.eps;
  HDP_ASSIGN_OR_RETURN(taus, ParseIntRange(f.tau, "tau"));
  spec.taus = taus;
  spec.trials = f.trials;
  spec.seed = f.seed;
  spec.threads = f.threads;
  if (f.merge == "mean-noise") {
    spec.merge = MergeVariance::kMeanNoise;
  } else if (f.merge == "per-query") {
    spec.merge = MergeVariance::kPerQuery;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "--merge must be mean-noise or per-query, got '", f.merge, "'"));
  }
  HDP_ASSIGN_OR_RETURN(fracs, ParseDoubles(f.tcm_frac, "tcm-frac"));
  std::vector<KMeansExperimentRow> rows;
  for (double frac : fracs) {
    spec.tcm_fraction = frac;
    HDP_ASSIGN_OR_RETURN(part, RunKMeansExperiment(spec));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  HDP_ASSIGN_OR_RETURN(table, KMeansTable(rows));
  return Emit(table, f.out, out);
}

// Inserts the --config file's pairs right after the subcommand name so that
// flags given on the command line, parsed later, take precedence.
absl::StatusOr<std::vector<std::string>> ExpandConfig(
    const std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  std::vector<std::string> pairs;
  absl::Status st = ReadConfigArgs(path, pairs);
  if (!st.ok()) return st;
  std::vector<std::string> expanded;
  size_t insert_at = 0;
  while (insert_at < args.size() && !args[insert_at].empty() &&
         args[insert_at][0] == '-') {
    ++insert_at;
  }
  if (insert_at < args.size()) ++insert_at;
  expanded.insert(expanded.end(), args.begin(), args.begin() + insert_at);
  expanded.insert(expanded.end(), pairs.begin(), pairs.end());
  expanded.insert(expanded.end(), args.begin() + insert_at, args.end());
  return expanded;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kPermissionDenied:
      return kExitIo;
    case absl::StatusCode::kInternal:
    case absl::StatusCode::kUnknown:
      return kExitFailure;
    default:
      return kExitValidation;
  }
}

absl::Status ReadConfigArgs(const std::string& path,
                            std::vector<std::string>& out) {
  std::ifstream file(path);
  if (!file) {
    return absl::NotFoundError(absl::StrCat("cannot read config '", path, "'"));
  }
  std::string line;
  int line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    const size_t eq = text.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", line_number, ": expected key=value"));
    }
    absl::string_view key = absl::StripAsciiWhitespace(text.substr(0, eq));
    absl::string_view value = absl::StripAsciiWhitespace(text.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.remove_prefix(1);
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_number, ": empty key"));
    }
    if (key == "config") continue;
    out.push_back(absl::StrCat("--", key));
    out.emplace_back(value.data(), value.size());
  }
  return absl::OkStatus();
}

int RunCli(const std::vector<std::string>& raw_args, std::ostream& out,
           std::ostream& err) {
  absl::StatusOr<std::vector<std::string>> args = ExpandConfig(raw_args);
  if (!args.ok()) {
    err << "error: " << args.status().message() << "\n";
    return ExitCodeFor(args.status());
  }

  CLI::App app{"Hybrid-model differentially private mean estimation",
               "hybrid_dp"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  AnalyzeFlags af;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Closed-form MSEs, weights and R/r");
  analyze->add_option("--mech", af.mech, "laplace | gaussian");
  analyze->add_option("--n", af.n, "Total users n");
  analyze->add_option("--c", af.c, "Opt-in fraction c");
  analyze->add_option("--eps", af.eps, "Privacy parameter epsilon");
  analyze->add_option("--delta", af.delta, "Privacy parameter delta");
  analyze->add_option("--m", af.m, "Support bound m");
  analyze->add_option("--sigma", af.sigma, "Std dev of both groups");
  analyze->add_option("--sigma-t", af.sigma_t, "TCM group std dev sigma_T");
  analyze->add_option("--sigma-l", af.sigma_l, "LM group std dev sigma_L");
  analyze->add_option("--mu-t", af.mu_t, "TCM group mean mu_T (default m/2)");
  analyze->add_option("--mu-l", af.mu_l, "LM group mean mu_L (default m/2)");
  analyze->add_option("--weight", af.weight, "kvh | pwh | nwh | fixed:W");
  analyze->add_option("--out", af.out, "Optional CSV row output path");
  analyze->add_option("--config", config_path, "key=value config file");

  SweepFlags sf;
  CLI::App* sweep = app.add_subcommand("sweep", "Closed-form parameter sweeps");
  sweep->add_option("--kind", sf.kind, "improvement | skew");
  sweep->add_option("--preset", sf.presets, "Comma list of presets");
  sweep->add_option("--mech", sf.mech, "laplace | gaussian");
  sweep->add_option("--eps", sf.eps, "Comma list of epsilons");
  sweep->add_option("--delta", sf.delta, "delta (Gaussian)");
  sweep->add_option("--c", sf.cs, "Comma list of opt-in fractions");
  sweep->add_option("--n", sf.ns, "Comma list of n (overrides --n-range)");
  sweep->add_option("--n-range", sf.n_range, "LO..HI:POINTS in log10(n)");
  sweep->add_option("--weight", sf.weights, "Comma list of weight rules");
  sweep->add_option("--out", sf.out, "CSV output path (stdout if empty)");
  int sweep_threads = 1;
  uint64_t sweep_seed = 0;
  sweep->add_option("--threads", sweep_threads, "Accepted; sweeps are exact");
  sweep->add_option("--seed", sweep_seed, "Accepted; sweeps are exact");
  sweep->add_option("--config", config_path, "key=value config file");

  SimulateFlags mf;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo MSE of every estimator against closed forms");
  simulate->add_option("--preset", mf.preset, "Preset for both groups");
  simulate->add_option("--preset-t", mf.preset_t, "TCM group preset");
  simulate->add_option("--preset-l", mf.preset_l, "LM group preset");
  simulate->add_option("--mech", mf.mech, "laplace | gaussian");
  simulate->add_option("--n", mf.n, "Total users n");
  simulate->add_option("--c", mf.c, "Opt-in fraction c");
  simulate->add_option("--eps", mf.eps, "Privacy parameter epsilon");
  simulate->add_option("--delta", mf.delta, "Privacy parameter delta");
  simulate->add_option("--seed", mf.seed, "Root seed");
  simulate->add_option("--trials", mf.trials, "Monte Carlo trials");
  simulate->add_option("--threads", mf.threads, "Worker threads");
  simulate->add_flag("--noise-only", mf.noise_only,
                     "Debugging: fix the data, resample noise only");
  simulate->add_option("--out", mf.out, "CSV output path (stdout if empty)");
  simulate->add_option("--config", config_path, "key=value config file");

  AmplifyFlags pf;
  CLI::App* amplify = app.add_subcommand(
      "amplify", "Gaussian amplification against output-viewing adversaries");
  amplify->add_option("--preset", pf.preset, "Preset supplying n, m, sigma");
  amplify->add_option("--n", pf.n, "Total users n (overrides preset)");
  amplify->add_option("--m", pf.m, "Support bound m (overrides preset)");
  amplify->add_option("--sigma", pf.sigma, "Std dev (overrides preset)");
  amplify->add_option("--mu", pf.mu, "Mean (overrides preset)");
  amplify->add_option("--c", pf.cs, "Comma list of opt-in fractions");
  amplify->add_option("--eps", pf.eps, "Base epsilon");
  amplify->add_option("--delta", pf.delta, "Base delta");
  amplify->add_option("--weight", pf.weight, "kvh | pwh | nwh | fixed:W");
  amplify->add_option("--adv-frac", pf.adv_frac,
                      "Comma list of adversarial LM fractions");
  amplify->add_option("--out", pf.out, "CSV output path (stdout if empty)");
  int amplify_threads = 1;
  uint64_t amplify_seed = 0;
  amplify->add_option("--threads", amplify_threads, "Accepted; exact");
  amplify->add_option("--seed", amplify_seed, "Accepted; exact");
  amplify->add_option("--config", config_path, "key=value config file");

  KMeansFlags kf;
  CLI::App* kmeans =
      app.add_subcommand("kmeans", "Hybrid, TCM and LM DP K-means WCSS");
  kmeans->add_option("--preset", kf.preset, "gauss4");
  kmeans->add_option("--scale", kf.scale,
                     "Fraction of 40000 points per cluster");
  kmeans->add_option("--eps", kf.eps, "Privacy parameter epsilon");
  kmeans->add_option("--tau", kf.tau, "Iterations: A..B or comma list");
  kmeans->add_option("--trials", kf.trials, "Trials per tau");
  kmeans->add_option("--tcm-frac", kf.tcm_frac, "Comma list of TCM fractions");
  kmeans->add_option("--seed", kf.seed, "Root seed");
  kmeans->add_option("--threads", kf.threads, "Worker threads");
  kmeans->add_option("--merge", kf.merge, "mean-noise | per-query");
  kmeans->add_option("--out", kf.out, "CSV output path (stdout if empty)");
  kmeans->add_option("--config", config_path, "key=value config file");

  std::vector<std::string> reversed(args->rbegin(), args->rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  absl::Status status;
  int code = kExitOk;
  if (*analyze) {
    status = RunAnalyze(af, out, err);
  } else if (*sweep) {
    status = RunSweep(sf, out, err);
  } else if (*simulate) {
    absl::StatusOr<int> result = RunSimulate(mf, out, err);
    if (result.ok()) {
      code = *result;
    } else {
      status = result.status();
    }
  } else if (*amplify) {
    status = RunAmplify(pf, out);
  } else if (*kmeans) {
    status = RunKMeans(kf, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return code;
}

}  // namespace hybrid_dp::cli
