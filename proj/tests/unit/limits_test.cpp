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

#include "ples/limits.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ples/semicircle.hpp"

namespace ples::limits {
namespace {

TEST(LimitVariance, UntruncatedMonomials) {
  EXPECT_NEAR(limit_variance(TestFunction::monomial(1), 2.0).value, 1.0, 1e-10);
  EXPECT_NEAR(limit_variance(TestFunction::monomial(2), 2.0).value, 2.0, 1e-10);
  EXPECT_NEAR(limit_variance(TestFunction::monomial(3), 2.0).value, 12.0, 1e-9);
}

TEST(LimitVariance, ReportsMetadata) {
  const LimitVariance v = limit_variance(TestFunction::monomial(2), 0.0);
  EXPECT_EQ(v.function, "x2");
  ASSERT_EQ(v.thresholds.size(), 1u);
  EXPECT_EQ(v.thresholds[0], 0.0);
  EXPECT_GT(v.panels, 0u);
  EXPECT_LT(v.error_estimate, 1e-8);
}

TEST(LimitVariance, MatchesRiemannOracle) {
  for (int k = 1; k <= 3; ++k) {
    const TestFunction f = TestFunction::monomial(k);
    for (double u : {0.0, 1.0, 2.0}) {
      const double ours = limit_variance(f, u).value;
      const double ref = oracle::riemann_limit_variance(f, u);
      EXPECT_NEAR(ours, ref, 1e-4 * std::max(1.0, ref)) << "x^" << k << " u=" << u;
    }
  }
}

TEST(LimitVariance, ConstantTruncatedHasNoSmoothPart) {
  // f = 1 truncated is identically zero.
  EXPECT_NEAR(limit_variance(TestFunction::polynomial({1.0}), 0.3).value, 0.0, 1e-14);
}

TEST(LimitVariance, RejectsThresholdOutsideSupport) {
  EXPECT_THROW(limit_variance(TestFunction::monomial(1), 2.5), std::invalid_argument);
  EXPECT_THROW(limit_variance(TestFunction::monomial(1), -2.01), std::invalid_argument);
}

TEST(ProcessCovariance, DiagonalIsVarianceAtQuantile) {
  const TestFunction f = TestFunction::monomial(2);
  for (double t : {0.2, 0.5, 0.8}) {
    EXPECT_NEAR(process_covariance(f, t, t).value, limit_variance(f, semicircle::quantile(t)).value, 1e-10);
  }
}

TEST(ProcessCovariance, Symmetric) {
  const TestFunction f = TestFunction::gaussian_bump();
  EXPECT_EQ(process_covariance(f, 0.3, 0.7).value, process_covariance(f, 0.7, 0.3).value);
}

TEST(ProcessCovariance, PositiveSemidefiniteOnGrid) {
  const TestFunction f = TestFunction::monomial(2);
  const std::vector<double> ts{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> c(25);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) c[i * 5 + j] = process_covariance(f, ts[i], ts[j]).value;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_LE(c[i * 5 + j] * c[i * 5 + j], c[i * 5 + i] * c[j * 5 + j] * (1.0 + 1e-9));
}

TEST(ProcessCovariance, RejectsTimesOutsideMargin) {
  const TestFunction f = TestFunction::monomial(1);
  EXPECT_THROW(process_covariance(f, 0.05, 0.5), std::invalid_argument);
  EXPECT_THROW(process_covariance(f, 0.5, 0.95), std::invalid_argument);
  EXPECT_NO_THROW(process_covariance(f, 0.05, 0.5, 0.05));
}

TEST(BilinearForm, OrderOfThresholdsIrrelevant) {
  const TestFunction f = TestFunction::monomial(3);
  EXPECT_EQ(bilinear_form(f, -0.4, 1.2).value, bilinear_form(f, 1.2, -0.4).value);
}

TEST(Normalizer, Values) {
  const double expected = std::sqrt(std::log(100.0) / (2.0 * std::numbers::pi * std::numbers::pi));
  EXPECT_NEAR(counting_variance_normalizer(1.0, 100), expected, 1e-15);
  EXPECT_NEAR(counting_variance_normalizer(1.0, 100), 0.48301, 1e-5);
  EXPECT_NEAR(counting_variance_normalizer(-2.0, 100), 2.0 * expected, 1e-15);
  EXPECT_THROW(counting_variance_normalizer(0.0, 100), std::invalid_argument);
  EXPECT_THROW(counting_variance_normalizer(1.0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace ples::limits
