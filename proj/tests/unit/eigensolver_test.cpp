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

#include "ples/eigensolver.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace ples {
namespace {

TridiagonalMatrix tri(std::vector<double> d, std::vector<double> e) { return {std::move(d), std::move(e)}; }

TEST(Spectrum, RequiresAscendingOrder) {
  EXPECT_THROW(Spectrum({1.0, 0.0}), std::invalid_argument);
  const Spectrum s({-1.0, 0.0, 2.0});
  EXPECT_EQ(s.sum(), 1.0);
  EXPECT_EQ(s.sum_of_squares(), 5.0);
}

TEST(Tridiagonal, TwoByTwo) {
  const Spectrum s = eigenvalues_tridiagonal(tri({0.0, 0.0}, {1.0}));
  EXPECT_NEAR(s[0], -1.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0, 1e-15);
}

TEST(Tridiagonal, PathGraph) {
  const Spectrum s = eigenvalues_tridiagonal(tri({0.0, 0.0, 0.0}, {1.0, 1.0}));
  EXPECT_NEAR(s[0], -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s[1], 0.0, 1e-14);
  EXPECT_NEAR(s[2], std::sqrt(2.0), 1e-14);
}

TEST(Tridiagonal, DiagonalIsSorted) {
  const Spectrum s = eigenvalues_tridiagonal(tri({3.0, -1.0, 2.0}, {0.0, 0.0}));
  EXPECT_EQ(s.eigenvalues(), (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(Tridiagonal, RejectsBadShape) {
  EXPECT_THROW(eigenvalues_tridiagonal(tri({1.0, 2.0}, {})), std::invalid_argument);
}

TEST(Dense, TwoByTwoComplex) {
  HermitianMatrix m(2);
  m.set_diagonal(0, 1.0);
  m.set_diagonal(1, -1.0);
  m.set_upper(0, 1, {0.0, 1.0});
  const Spectrum s = eigenvalues_dense(m);
  EXPECT_NEAR(s[0], -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s[1], std::sqrt(2.0), 1e-14);
}

TEST(Householder, OffDiagonalNonnegativeAndInvariantsKept) {
  const HermitianMatrix m = sample_gue_dense(24, 5);
  const TridiagonalMatrix t = householder_tridiagonalize(m);
  for (double b : t.off_diagonal) EXPECT_GE(b, 0.0);
  EXPECT_NEAR(t.trace(), m.trace(), 1e-12);
  EXPECT_NEAR(t.frobenius_squared(), m.frobenius_squared(), 1e-11);
}

TEST(Householder, SpectraMatchJacobiOracle) {
  for (Seed seed = 100; seed < 120; ++seed) {
    const HermitianMatrix m = sample_gue_dense(16, seed);
    const Spectrum s = eigenvalues_dense(m);
    const std::vector<double> ref = oracle::jacobi_eigenvalues(m);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(s[i], ref[i], 1e-11) << seed << " " << i;
  }
}

TEST(Sturm, CountsEigenvaluesBelow) {
  const TridiagonalMatrix t = tri({0.0, 0.0, 0.0}, {1.0, 1.0});
  EXPECT_EQ(sturm_count(t, -2.0), 0u);
  EXPECT_EQ(sturm_count(t, -1.0), 1u);
  EXPECT_EQ(sturm_count(t, 0.5), 2u);
  EXPECT_EQ(sturm_count(t, 2.0), 3u);
}

TEST(Sturm, MatchesQlSpectrum) {
  const TridiagonalMatrix t = sample_gue_tridiagonal(50, 11);
  const Spectrum s = eigenvalues_tridiagonal(t);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double mid = 0.5 * (s[i] + s[i + 1]);
    EXPECT_EQ(sturm_count(t, mid), i + 1);
  }
}

TEST(Gershgorin, EnclosesSpectrum) {
  for (Seed seed = 1; seed <= 10; ++seed) {
    const TridiagonalMatrix t = sample_gue_tridiagonal(40, seed);
    const Interval g = gershgorin_bounds(t);
    EXPECT_EQ(sturm_count(t, g.lower), 0u);
    EXPECT_EQ(sturm_count(t, g.upper), 40u);
  }
}

TEST(Bisection, AgreesWithQl) {
  for (std::size_t n : {8u, 64u, 256u}) {
    for (Seed seed = 0; seed < 100; ++seed) {
      const TridiagonalMatrix t = sample_gue_tridiagonal(n, 1000 * n + seed);
      const Spectrum ql = eigenvalues_tridiagonal(t);
      const Spectrum bi = eigenvalues_bisection(t, 1e-13);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(ql[i] - bi[i]));
      ASSERT_LE(worst, 1e-10) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(Bisection, RejectsNonpositiveTolerance) {
  EXPECT_THROW(eigenvalues_bisection(tri({0.0}, {}), 0.0), std::invalid_argument);
}

TEST(Identities, HoldForBothSolvers) {
  const HermitianMatrix m = sample_gue_dense(64, 77);
  EXPECT_TRUE(check_identities(eigenvalues_dense(m), m).ok());
  const TridiagonalMatrix t = sample_gue_tridiagonal(512, 77);
  EXPECT_TRUE(check_identities(eigenvalues_tridiagonal(t), t).ok());
}

TEST(Identities, DetectPerturbedSpectrum) {
  const TridiagonalMatrix t = sample_gue_tridiagonal(32, 4);
  std::vector<double> v = eigenvalues_tridiagonal(t).eigenvalues();
  v.back() += 1e-6;
  EXPECT_FALSE(check_identities(Spectrum(v), t).ok());
}

}  // namespace
}  // namespace ples
