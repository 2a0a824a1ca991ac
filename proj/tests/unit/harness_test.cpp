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

#include "ples/harness.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <set>

namespace ples::harness {
namespace {

constexpr const char* kPlan = R"(
name = "small"
seed = 99
samples = 40
n = [16, 24]
exact_centering = true
[[statistic]]
name = "A"
kind = "type_a"
fn = "x2"
u = 0.3
value = "normalized"
[[statistic]]
name = "S"
kind = "process"
fn = "x"
t = [0.3, 0.6]
[[statistic]]
name = "mid"
kind = "middle_eigenvalue"
)";

TEST(Seeds, DistinctAcrossCoordinates) {
  std::set<Seed> seen;
  for (unsigned role : {0u, 1u})
    for (std::size_t n : {16u, 32u})
      for (std::size_t i = 0; i < 50; ++i)
        for (std::size_t a = 0; a < 3; ++a) seen.insert(sample_seed(7, role, n, i, a));
  EXPECT_EQ(seen.size(), 2u * 2u * 50u * 3u);
  EXPECT_EQ(sample_seed(7, 0, 16, 3, 0), sample_seed(7, 0, 16, 3, 0));
}

TEST(SampleSpectrum, IdentitiesHold) {
  for (const char* e : {"gue", "gue-tridiag", "wigner-matched"}) {
    const SampledSpectrum s = sample_spectrum(EnsembleSpec::parse(e), 40, 3);
    EXPECT_EQ(s.spectrum.size(), 40u);
    EXPECT_TRUE(s.identities.ok()) << e;
  }
}

TEST(Run, EmptyPlanGivesValidJson) {
  const ExperimentReport r = run(parse_plan("", "empty.toml"));
  EXPECT_TRUE(r.passed());
  const nlohmann::json j = nlohmann::json::parse(r.to_json());
  EXPECT_TRUE(j.is_object());
}

TEST(Run, IndependentOfWorkerCount) {
  const ExperimentPlan plan = parse_plan(kPlan, "small.toml");
  const ExperimentReport one = run(plan, {1});
  const ExperimentReport many = run(plan, {8});
  EXPECT_EQ(one.to_json(), many.to_json());
  EXPECT_EQ(one.to_csv(), many.to_csv());
}

TEST(Run, ReportShape) {
  const ExperimentReport r = run(parse_plan(kPlan, "small.toml"), {2});
  EXPECT_EQ(r.solver_failures, 0u);
  EXPECT_EQ(r.identity_failures, 0u);
  EXPECT_LT(r.max_decomposition_residual, 1e-11);
  ASSERT_EQ(r.runs.size(), 2u);
  EXPECT_EQ(r.runs[0].samples.size(), 40u);
  // A, S@t=0.3, S@t=0.6, mid.
  EXPECT_EQ(r.columns.size(), 4u);
  for (const SampleRecord& s : r.runs[1].samples) {
    EXPECT_EQ(s.attempts, 0u);
    EXPECT_TRUE(s.values[0].normalized.has_value());
  }
  const nlohmann::json j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["plan"], "small");
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.rfind("ensemble,n,sample,seed,attempts,column,raw,centered,normalized\n", 0), 0u);
  // Header plus one line per (n, sample, column).
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 1u + 2u * 40u * 4u);
}

TEST(Run, SameSeedSameReport) {
  const ExperimentPlan plan = parse_plan(kPlan, "small.toml");
  EXPECT_EQ(run(plan, {1}).to_csv(), run(plan, {1}).to_csv());
  ExperimentPlan other = plan;
  other.seed = 100;
  EXPECT_NE(run(plan, {1}).to_csv(), run(other, {1}).to_csv());
}

TEST(Run, FailingVerdictIsReported) {
  const ExperimentReport r = run(parse_plan(R"(
samples = 100
n = 16
[[statistic]]
name = "L"
kind = "linear"
fn = "x"
[statistic.verdicts]
variance_ratio = [10.0, 20.0]
variance_reference = "limit"
)", "fail.toml"), {1});
  EXPECT_FALSE(r.passed());
  ASSERT_FALSE(r.rows.empty());
  ASSERT_FALSE(r.rows[0].verdicts.empty());
  EXPECT_FALSE(r.rows[0].verdicts[0].pass);
}

}  // namespace
}  // namespace ples::harness
