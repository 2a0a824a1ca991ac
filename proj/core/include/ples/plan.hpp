// Copyright 2026 The ples Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ples/ensemble.hpp"
#include "ples/limits.hpp"
#include "ples/rng.hpp"
#include "ples/testfn.hpp"

/// Experiment plans: which ensemble, sizes, sample counts, statistics and
/// verdicts to run. Loaded from TOML; see plans/README.md for the schema.
namespace ples {

/// Schema or domain error. The message starts with the path of the offending
/// field, e.g. "statistic[1].u: ...".
class PlanError : public std::runtime_error {
 public:
  PlanError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class PlanStatistic {
  kLinear,            // L_n[f], or L_n[f_u] when u is given
  kTypeA,             // A_n[f; u]
  kTypeB,             // B_n[f; k]
  kProcess,           // S_n[f; t] on a t-grid
  kCounting,          // N_n(-inf, u]
  kRigidity,          // rigidity score
  kMiddleEigenvalue,  // lambda_{n/2}
};

enum class ValueField { kRaw, kCentered, kNormalized };

/// What an empirical variance is compared against.
enum class VarianceReference {
  kLimit,       // V_GUE[f_u] (type A, linear) or V_GUE[f_{gamma_{k/n}}] (type B)
  kUnit,        // 1, for normalized statistics
  kLogCounting  // (f(u)^2 / 2 pi^2) log n, for centered type A
};

struct Range {
  double min;
  double max;
};

struct FractionBound {
  double threshold;
  double min_fraction;
};

struct Verdicts {
  std::optional<double> ks_normal_p_min;
  std::optional<double> two_sample_p_min;
  std::optional<Range> variance_ratio;
  VarianceReference variance_reference = VarianceReference::kLimit;
  /// Empirical mean and variance within this many standard errors of the
  /// exact determinantal values (GUE only).
  std::optional<double> exact_within_se;
  std::optional<double> covariance_z_max;
  std::optional<double> skewness_max;
  std::optional<double> excess_kurtosis_max;
  /// Fraction of samples with value <= threshold must be >= min_fraction.
  std::optional<FractionBound> fraction_at_most;
  /// Var * n^2 / log n must change by at most this factor between
  /// consecutive n.
  std::optional<double> scaled_variance_stability;

  bool any() const noexcept;
};

struct StatisticSpec {
  std::string name;
  PlanStatistic kind = PlanStatistic::kTypeA;
  std::optional<TestFunction> f;
  std::string fn_spec;
  std::optional<double> u;
  /// k = floor(k_fraction * n), at least 1.
  std::optional<double> k_fraction;
  std::optional<std::size_t> k;
  std::vector<double> t;
  ValueField value = ValueField::kCentered;
  Verdicts verdicts;

  std::size_t rank_for(std::size_t n) const;
  /// Values per sample: the t-grid size for processes, otherwise 1.
  std::size_t width() const noexcept { return kind == PlanStatistic::kProcess ? t.size() : 1; }
};

struct ExperimentPlan {
  std::string name = "experiment";
  EnsembleSpec ensemble = EnsembleSpec::gue_tridiagonal();
  std::optional<EnsembleSpec> compare;
  std::vector<std::size_t> n;
  std::size_t samples = 0;
  Seed seed = 0;
  double delta = kDefaultDelta;
  double time_delta = limits::kDefaultTimeDelta;
  /// Center type A by the exact GUE mean E A_n instead of m[f; u].
  bool exact_centering = false;
  std::vector<StatisticSpec> statistics;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;

  /// Domain checks that must hold before any compute. Throws PlanError.
  void validate() const;
};

ExperimentPlan parse_plan(std::string_view toml_text, std::string_view source = "plan");
ExperimentPlan load_plan(const std::string& path);

std::string_view to_string(PlanStatistic kind);
std::string_view to_string(ValueField field);
std::string_view to_string(VarianceReference reference);

}  // namespace ples
