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
#include <vector>

#include "ples/eigensolver.hpp"
#include "ples/ensemble.hpp"
#include "ples/plan.hpp"
#include "ples/rng.hpp"
#include "ples/stat_tests.hpp"

/// Seeded, parallel Monte Carlo runner. Samples are distributed over a work
/// queue; results are folded in sample-index order, so every report byte is
/// independent of the worker count.
namespace ples::harness {

/// Worker count: PLES_WORKERS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned default_workers();

/// A sampled spectrum with the trace and Frobenius identities checked
/// against the matrix it came from.
struct SampledSpectrum {
  Spectrum spectrum;
  IdentityCheck identities;
};

/// Draws one matrix from `ensemble` and diagonalizes it (tridiagonal QL for
/// gue-tridiag, Householder + QL otherwise). Throws ConvergenceError.
SampledSpectrum sample_spectrum(const EnsembleSpec& ensemble, std::size_t n, Seed seed);

/// Seed of sample `index` in stream `role` (0 = primary ensemble,
/// 1 = comparison ensemble) at size n, after `attempt` solver failures.
Seed sample_seed(Seed master, unsigned role, std::size_t n, std::size_t index, std::size_t attempt);

/// Resampling attempts per sample before the run aborts.
inline constexpr std::size_t kMaxAttempts = 8;
/// Largest tolerated fraction of samples that needed resampling.
inline constexpr double kMaxFailureFraction = 1e-3;

class ExperimentAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Verdict {
  std::string check;
  /// Property the check tests.
  std::string invariant;
  double observed = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct Row {
  std::string statistic;
  std::string kind;
  std::string value;
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::optional<double> u;
  std::optional<double> t;
  stats::Moments moments;
  std::optional<stats::KsResult> ks_normal;
  std::optional<stats::KsResult> two_sample;
  std::optional<double> exact_mean;
  std::optional<double> exact_variance;
  std::optional<double> limit_variance;
  std::optional<double> reference_variance;
  std::vector<Verdict> verdicts;
};

struct CovarianceGrid {
  std::string statistic;
  std::size_t n = 0;
  std::vector<double> t;
  std::vector<double> empirical;
  std::vector<double> standard_error;
  std::vector<double> theoretical;
  std::vector<double> z;
  std::optional<Verdict> verdict;
};

/// Verdicts spanning several n for one statistic.
struct SeriesResult {
  std::string statistic;
  std::vector<std::size_t> n;
  std::vector<double> scaled_variance;
  std::vector<Verdict> verdicts;
};

/// One evaluated statistic value of one sample.
struct SampleValue {
  double raw = 0.0;
  double centered = 0.0;
  std::optional<double> normalized;
};

struct SampleRecord {
  Seed seed = 0;
  std::size_t attempts = 0;
  bool identities_ok = true;
  double decomposition_residual = 0.0;
  /// One entry per statistic column (process statistics contribute one
  /// column per t).
  std::vector<SampleValue> values;
};

struct EnsembleRun {
  std::string ensemble;
  std::size_t n = 0;
  std::vector<SampleRecord> samples;
};

struct ExperimentReport {
  std::string plan;
  Seed seed = 0;
  std::size_t samples = 0;
  std::string ensemble;
  std::optional<std::string> compare;
  std::vector<Row> rows;
  std::vector<CovarianceGrid> covariances;
  std::vector<SeriesResult> series;
  std::vector<Verdict> checks;
  std::size_t solver_failures = 0;
  std::size_t identity_failures = 0;
  double max_decomposition_residual = 0.0;
  /// Column labels shared by every SampleRecord.
  std::vector<std::string> columns;
  std::vector<EnsembleRun> runs;

  bool passed() const;
  std::string to_json() const;
  /// Flat per-sample rows.
  std::string to_csv() const;
};

struct RunOptions {
  unsigned workers = 0;  // 0: default_workers()
};

/// Executes the plan. Validates it first; writes the JSON and CSV outputs
/// named in the plan. Throws ExperimentAborted when more than 0.1% of the
/// samples of any (ensemble, n) needed resampling.
ExperimentReport run(const ExperimentPlan& plan, RunOptions options = {});

}  // namespace ples::harness
