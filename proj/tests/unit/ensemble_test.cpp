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

#include "ples/ensemble.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace ples {
namespace {

TEST(AtomDistribution, MatchedOffDiagonal) {
  const AtomDistribution d = matched_atom_offdiagonal();
  ASSERT_EQ(d.atoms().size(), 3u);
  EXPECT_NEAR(d.max_abs(), std::sqrt(1.5), 1e-15);
  for (const auto& a : d.atoms()) {
    if (a.value != 0.0) EXPECT_NEAR(a.probability, 1.0 / 6.0, 1e-15);
  }
  EXPECT_NEAR(d.moment(1), 0.0, 1e-15);
  EXPECT_NEAR(d.moment(2), 0.5, 1e-15);
  EXPECT_NEAR(d.moment(3), 0.0, 1e-15);
  EXPECT_NEAR(d.moment(4), 0.75, 1e-15);
}

TEST(AtomDistribution, MatchedDiagonal) {
  const AtomDistribution d = matched_atom_diagonal();
  EXPECT_NEAR(d.max_abs(), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(d.moment(2), 1.0, 1e-15);
  EXPECT_NEAR(d.moment(4), 3.0, 1e-14);
}

TEST(AtomDistribution, FourthMomentScale) {
  const AtomDistribution d = offdiagonal_with_fourth_moment_scale(1.5);
  EXPECT_NEAR(d.moment(2), 0.5, 1e-15);
  EXPECT_NEAR(d.moment(4), 1.125, 1e-14);
  EXPECT_THROW(offdiagonal_with_fourth_moment_scale(0.5), std::invalid_argument);
}

TEST(AtomDistribution, RejectsBadTables) {
  using A = AtomDistribution::Atom;
  EXPECT_THROW(AtomDistribution({A{-1, 0.3}, A{0, 0.3}, A{1, 0.3}}), std::invalid_argument);
  EXPECT_THROW(AtomDistribution({A{-1, 0.5}, A{1, 0.5}}), std::invalid_argument);
  EXPECT_THROW(AtomDistribution({A{-1, 0.2}, A{0, 0.3}, A{2, 0.5}}), std::invalid_argument);
  EXPECT_THROW(AtomDistribution({A{-1, -0.2}, A{0, 0.7}, A{1, 0.5}}), std::invalid_argument);
  EXPECT_NO_THROW(AtomDistribution({A{-1, 0.25}, A{0, 0.5}, A{1, 0.25}}));
}

TEST(AtomDistribution, DrawsOnlyAtoms) {
  const AtomDistribution d = matched_atom_offdiagonal();
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = d.draw(rng);
    EXPECT_TRUE(x == 0.0 || std::abs(std::abs(x) - std::sqrt(1.5)) < 1e-15) << x;
  }
}

TEST(HermitianMatrix, SetUpperKeepsConjugateSymmetry) {
  HermitianMatrix m(3);
  m.set_upper(0, 2, {1.0, -2.0});
  m.set_diagonal(1, 4.0);
  EXPECT_EQ(m(2, 0), std::complex<double>(1.0, 2.0));
  EXPECT_EQ(m.trace(), 4.0);
  EXPECT_EQ(m.frobenius_squared(), 16.0 + 2.0 * 5.0);
}

TEST(GueDense, IsHermitianWithRealDiagonal) {
  const HermitianMatrix m = sample_gue_dense(17, 42);
  for (std::size_t j = 0; j < m.size(); ++j) {
    EXPECT_EQ(m(j, j).imag(), 0.0);
    for (std::size_t k = 0; k < m.size(); ++k) EXPECT_EQ(m(j, k), std::conj(m(k, j)));
  }
}

TEST(GueDense, DeterministicInSeed) {
  EXPECT_EQ(sample_gue_dense(12, 7).data(), sample_gue_dense(12, 7).data());
  EXPECT_NE(sample_gue_dense(12, 7).data(), sample_gue_dense(12, 8).data());
}

TEST(GueTridiagonal, ShapeAndDeterminism) {
  const TridiagonalMatrix t = sample_gue_tridiagonal(20, 3);
  ASSERT_EQ(t.diagonal.size(), 20u);
  ASSERT_EQ(t.off_diagonal.size(), 19u);
  for (double b : t.off_diagonal) EXPECT_GE(b, 0.0);
  EXPECT_EQ(t.diagonal, sample_gue_tridiagonal(20, 3).diagonal);
  EXPECT_EQ(t.off_diagonal, sample_gue_tridiagonal(20, 3).off_diagonal);
  EXPECT_TRUE(sample_gue_tridiagonal(1, 3).off_diagonal.empty());
  EXPECT_THROW(sample_gue_tridiagonal(0, 3), std::invalid_argument);
}

TEST(Wigner, MatchedEntriesAreBoundedAtoms) {
  const std::size_t n = 30;
  const EnsembleSpec spec = EnsembleSpec::wigner_matched();
  const HermitianMatrix m = sample_wigner(n, spec.diagonal, spec.off_diagonal, 9);
  const double s = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double d = m(j, j).real() * s;
    EXPECT_TRUE(std::abs(d) < 1e-12 || std::abs(std::abs(d) - std::sqrt(3.0)) < 1e-12) << d;
    for (std::size_t k = j + 1; k < n; ++k) {
      for (double part : {m(j, k).real() * s, m(j, k).imag() * s})
        EXPECT_TRUE(std::abs(part) < 1e-12 || std::abs(std::abs(part) - std::sqrt(1.5)) < 1e-12);
    }
  }
}

TEST(Wigner, RejectsWrongVariance) {
  EXPECT_THROW(sample_wigner(4, GaussianLaw{1.0}, GaussianLaw{1.0}, 1), std::invalid_argument);
  EXPECT_THROW(sample_wigner(4, GaussianLaw{0.0}, GaussianLaw{0.5}, 1), std::invalid_argument);
  EXPECT_THROW(sample_wigner(0, GaussianLaw{1.0}, GaussianLaw{0.5}, 1), std::invalid_argument);
}

TEST(EnsembleSpec, ParseNames) {
  EXPECT_EQ(EnsembleSpec::parse("gue").kind, EnsembleSpec::Kind::kGueDense);
  EXPECT_EQ(EnsembleSpec::parse("gue-tridiag").kind, EnsembleSpec::Kind::kGueTridiagonal);
  EXPECT_EQ(EnsembleSpec::parse("wigner-matched").kind, EnsembleSpec::Kind::kWigner);
  EXPECT_NEAR(entry_moment(EnsembleSpec::parse("wigner-mismatched").off_diagonal, 4), 1.125, 1e-14);
  EXPECT_THROW(EnsembleSpec::parse("wigner-custom"), std::invalid_argument);
  EXPECT_THROW(EnsembleSpec::parse("goe"), std::invalid_argument);
}

TEST(EnsembleSpec, EntryMomentsOfGaussianLaw) {
  EXPECT_EQ(entry_moment(GaussianLaw{0.5}, 2), 0.5);
  EXPECT_EQ(entry_moment(GaussianLaw{0.5}, 4), 0.75);
  EXPECT_EQ(entry_moment(GaussianLaw{0.5}, 3), 0.0);
}

}  // namespace
}  // namespace ples
